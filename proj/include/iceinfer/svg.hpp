#pragma once

// Small SVG 1.1 document builder. Coordinates are written with six decimals
// so documents are byte-stable and geometry can be parsed back in tests.

#include <string>
#include <string_view>

#include <fmt/format.h>

namespace iceinfer::svg {

inline std::string escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

class Document {
 public:
  Document(double width, double height) {
    body_ = fmt::format(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
        "width=\"{0:.0f}\" height=\"{1:.0f}\" viewBox=\"0 0 {0:.0f} {1:.0f}\">\n"
        "<rect x=\"0\" y=\"0\" width=\"{0:.0f}\" height=\"{1:.0f}\" "
        "fill=\"#FFFFFF\"/>\n",
        width, height);
  }

  /// Raw attributes are appended verbatim after the geometry.
  void rect(double x, double y, double w, double h, std::string_view attrs) {
    body_ += fmt::format(
        "<rect x=\"{:.6f}\" y=\"{:.6f}\" width=\"{:.6f}\" height=\"{:.6f}\" "
        "{}/>\n",
        x, y, w, h, attrs);
  }

  void line(double x1, double y1, double x2, double y2, std::string_view attrs) {
    body_ += fmt::format(
        "<line x1=\"{:.6f}\" y1=\"{:.6f}\" x2=\"{:.6f}\" y2=\"{:.6f}\" {}/>\n",
        x1, y1, x2, y2, attrs);
  }

  void circle(double cx, double cy, double r, std::string_view attrs) {
    body_ += fmt::format(
        "<circle cx=\"{:.6f}\" cy=\"{:.6f}\" r=\"{:.3f}\" {}/>\n", cx, cy, r,
        attrs);
  }

  void text(double x, double y, std::string_view content,
            std::string_view attrs) {
    body_ += fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\" {}>{}</text>\n", x, y,
                         attrs, escape(content));
  }

  void raw(std::string_view fragment) { body_ += fragment; }

  std::string finish() const { return body_ + "</svg>\n"; }

 private:
  std::string body_;
};

}  // namespace iceinfer::svg
