#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "denselab/closure.hpp"
#include "denselab/density.hpp"
#include "denselab/experiment.hpp"
#include "denselab/models.hpp"

namespace {

using namespace denselab;

// generator file: "model <name>" on the first line, then one generator per
// line as whitespace-separated coordinates (each "p/q" or with surd parts)
int run_densecheck(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "densecheck: cannot open " << path << "\n";
    return 2;
  }
  std::string header, word;
  if (!std::getline(in, header)) {
    std::cerr << "densecheck: empty file\n";
    return 2;
  }
  std::istringstream hs(header);
  std::string tag, model_name;
  hs >> tag >> model_name;
  if (tag != "model" || model_name.empty()) {
    std::cerr << "densecheck: first line must be 'model <name>'\n";
    return 2;
  }
  try {
    GroupModel m = GroupModel::by_name(model_name);
    if (!m.exact_backend()) {
      std::cerr << "densecheck: " << model_name << " has no exact coordinates\n";
      return 2;
    }
    std::vector<GroupElement> gens;
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      gens.push_back(m.element_from_coords(parse_field_vector(line)));
    }
    ModelDensityReport rep = model_density_check(m, gens);
    std::cout << "model: " << m.name() << "\ngenerators: " << gens.size()
              << "\nverdict: " << verdict_str(rep.result.verdict)
              << "\ndetail: " << rep.result.detail << "\n";
    if (rep.result.witness) {
      std::cout << "witness functional:";
      for (int j = 0; j < rep.result.witness->functional.size(); ++j)
        std::cout << " " << rep.result.witness->functional(j).str();
      std::cout << "\n";
    }
    return rep.result.verdict == Verdict::Inconclusive ? 1 : 0;
  } catch (const std::exception& e) {
    std::cerr << "densecheck: " << e.what() << "\n";
    return 2;
  }
}

int run_zradius(const std::string& model_name) {
  try {
    GroupModel m = GroupModel::by_name(model_name);
    std::vector<GroupElement> elements;
    std::vector<double> params;
    if (m.kind() == ModelKind::SL2R) {
      for (double t : {0.3, 0.4}) {
        elements.push_back(m.exp_float((Eigen::VectorXd(3) << 0.0, t, 0.0).finished()));
        params.push_back(t);
      }
    } else if (m.kind() == ModelKind::SO3) {
      for (double t : {0.9, 1.2}) {
        elements.push_back(m.exp_float((Eigen::VectorXd(3) << 0.0, 0.0, t).finished()));
        params.push_back(t);
      }
    } else {
      Rng rng(7);
      elements.push_back(m.sample_exact(m.default_window(), rng));
      params.push_back(0.0);
    }
    for (size_t i = 0; i < elements.size(); ++i) {
      ZRadiusReport rep = estimate_z_radius(m, elements[i]);
      std::printf("model=%s t=%.17g radius=%.17g failing=%.17g probes=%ld\n", m.name().c_str(),
                  params[i], rep.radius, rep.failing_radius, static_cast<long>(rep.probes_run));
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "zradius: " << e.what() << "\n";
    return 1;
  }
}

int run_report(const std::string& path) {
  namespace fs = std::filesystem;
  fs::path p(path);
  if (fs::is_directory(p)) p /= "summary.json";
  std::ifstream in(p);
  if (!in) {
    std::cerr << "report: cannot open " << p.string() << "\n";
    return 2;
  }
  try {
    nlohmann::json summary = nlohmann::json::parse(in);
    for (const auto& [key, value] : summary.items())
      std::cout << key << ": " << value.dump() << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "report: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"computational laboratory for dense subgroups of Lie groups"};
  app.require_subcommand(1);

  std::string check_path;
  CLI::App* densecheck = app.add_subcommand(
      "densecheck", "decide density for generators listed in a file");
  densecheck->add_option("file", check_path, "generator file")->required();

  ExperimentSpec spec;
  std::string out_dir;
  CLI::App* simulate = app.add_subcommand("simulate", "run a trial batch and write its rows");
  simulate->add_option("experiment", spec.id, "experiment id")
      ->required()
      ->check(CLI::IsMember(experiment_ids()));
  simulate->add_option("--model", spec.model, "group model name");
  simulate->add_option("--trials", spec.trials, "number of trials");
  CLI::Option* seed_opt = simulate->add_option("--seed", spec.seed, "master seed");
  simulate->add_option("--out", out_dir, "output directory (default out/<experiment>)");
  simulate->add_option("--jobs", spec.jobs, "worker threads");
  simulate->add_option("--word-length", spec.word_length, "closure search depth");
  simulate->add_option("--delta", spec.delta, "arc gap for ping-pong");
  simulate->add_option("--n", spec.pieces, "piece count for ping-pong");

  std::string zr_model = "sl2r";
  CLI::App* zradius = app.add_subcommand("zradius", "orbit collapse radius of reference elements");
  zradius->add_option("model", zr_model, "group model name");

  std::string report_path;
  CLI::App* report = app.add_subcommand("report", "pretty-print a summary.json");
  report->add_option("path", report_path, "summary file or its directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help exits 0, everything else is usage error
  }

  if (densecheck->parsed()) return run_densecheck(check_path);
  if (zradius->parsed()) return run_zradius(zr_model);
  if (report->parsed()) return run_report(report_path);

  // simulate
  if (seed_opt->count() == 0) {
    if (const char* env = std::getenv("LAB_SEED")) {
      try {
        spec.seed = std::stoull(env);
      } catch (const std::exception&) {
        std::cerr << "simulate: LAB_SEED must be an unsigned integer\n";
        return 2;
      }
    }
  }
  if (out_dir.empty()) out_dir = "out/" + spec.id;
  try {
    auto start = std::chrono::steady_clock::now();
    ExperimentResult result = run_experiment(spec);
    double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    write_experiment(result, out_dir, wall_ms);
    std::cout << "wrote " << result.json_rows.size() << " rows to " << out_dir << "\n"
              << result.summary_json << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "simulate: " << e.what() << "\n";
    return 1;
  }
}
