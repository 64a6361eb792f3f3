// ice-demo-data: writes the synthetic two-arm demo dataset as CSV.

#include <cstdint>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "iceinfer/data_model.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Write 99 Std + 101 New synthetic patients (trtm,effe,cost)"};
  std::uint64_t seed = 42;
  std::string out;
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--out", out, "Output CSV")->required();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    iceinfer::write_csv(out, iceinfer::generate_demo_data(seed));
  } catch (const iceinfer::Error& e) {
    fmt::print(stderr, "error: {}: {}\n", iceinfer::to_string(e.code()), e.what());
    return 1;
  }
  return 0;
}
