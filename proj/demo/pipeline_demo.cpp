// Library walk-through: demo data -> shadow price -> bootstrap -> wedge ->
// preference verdicts, printed to stdout.

#include <cstdio>

#include <fmt/format.h>

#include "iceinfer/iceinfer.hpp"

int main() {
  using namespace iceinfer;

  const auto data = split_arms(generate_demo_data(42));
  const auto scale = ice_scale(data.std_arm, data.new_arm);
  fmt::print("ratio {:.4f} -> lambda {}\n", scale.ratio,
             scale.recommended.value());

  const auto scatter =
      resample(data, 25000, 42, scale.recommended, Perspective::Alias);
  const auto wedge = compute_wedge(scatter, 0.95);
  fmt::print("95% wedge: {:.2f} to {:.2f} deg; {} below, {} above, {} inside\n",
             wedge.lower() * 180 / kPi, wedge.upper() * 180 / kPi,
             wedge.count_below, wedge.count_above, wedge.count_inside);

  for (const auto& map : {PreferenceMap::net_benefit(), PreferenceMap::ice_omega()}) {
    const auto h = preference_histogram(scatter, map);
    fmt::print("beta {:.3f} gamma {:.3f}: {} of {} preferences positive\n",
               map.beta(), map.gamma(), h.positive, h.n);
  }

  const std::vector<TreatmentOption> options{
      {"WW", 0, 0}, {"STD", 2, 10}, {"A", 2.5, 30}, {"B", 3, 20},
      {"C", 4.5, 55}, {"D", 5, 60}, {"E", 6, 120}};
  const auto frontier = compute_frontier(options);
  fmt::print("frontier:");
  for (const auto& o : frontier.frontier) fmt::print(" {}", o.name);
  fmt::print("\n");
  return 0;
}
