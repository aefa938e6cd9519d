// Writes the procedural garment-image dataset as a feature CSV plus labels.
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "vpl/io.hpp"
#include "vpl/synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate 28x28 garment-silhouette images (10 classes)", "vpl-make-garments"};
  vpl::Index count = 2000;
  std::uint64_t seed = 0;
  std::string features;
  std::string labels;
  app.add_option("--count", count, "Number of images")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Generator seed")->capture_default_str();
  app.add_option("--features", features, "Output feature CSV")->required();
  app.add_option("--labels", labels, "Output label list")->required();
  CLI11_PARSE(app, argc, argv);

  const auto data = vpl::make_garment_images(count, seed);
  std::ofstream fout(features, std::ios::binary);
  std::ofstream lout(labels, std::ios::binary);
  if (!fout || !lout) {
    std::cerr << "cannot open output files\n";
    return 2;
  }
  vpl::write_feature_csv(fout, data.pixels);
  vpl::write_label_list(lout, data.labels);
  std::cout << "wrote " << count << " images\n";
  return 0;
}
