#include "denselab/experiment.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "denselab/closure.hpp"
#include "denselab/density.hpp"
#include "denselab/models.hpp"
#include "denselab/pingpong.hpp"
#include "denselab/regular.hpp"
#include "denselab/rng.hpp"

namespace denselab {
namespace {

using nlohmann::json;

std::string csv_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct TrialRow {
  json j;
  std::string csv;
};

GroupElement draw(const GroupModel& m, const Neighbourhood& w, Rng& rng) {
  return m.exact_backend() ? m.sample_exact(w, rng) : m.sample(w, rng);
}

int effective_word_length(const ExperimentSpec& spec, int fallback) {
  return spec.word_length > 0 ? spec.word_length : fallback;
}

// --- per-experiment trial builders -----------------------------------------

TrialRow theorem_trial(const ExperimentSpec& spec, long i, Rng& rng) {
  GroupModel m = GroupModel::by_name(spec.model);
  TrialRow row;
  if (m.exact_backend()) {
    std::vector<GroupElement> gens;
    for (int k = 0; k < m.dim() + 1; ++k) gens.push_back(m.sample_exact(m.default_window(), rng));
    ModelDensityReport rep = model_density_check(m, gens);
    row.j = {{"trial", i},
             {"verdict", verdict_str(rep.result.verdict)},
             {"reduced_dim", rep.reduced_dim}};
    row.csv = std::to_string(i) + "," + verdict_str(rep.result.verdict) + "," +
              std::to_string(rep.reduced_dim);
  } else {
    std::vector<GroupElement> gens;
    for (int k = 0; k < m.dim() + 1; ++k) gens.push_back(m.sample(m.default_window(), rng));
    ClosureOptions opts;
    opts.word_length = effective_word_length(spec, 8);
    opts.rho = 0.25;
    ClosureReport rep = closure_dimension(m, gens, opts);
    const char* verdict = rep.dimension == m.dim() ? "dense-evidence" : "inconclusive";
    row.j = {{"trial", i}, {"verdict", verdict}, {"dimension", rep.dimension}};
    row.csv = std::to_string(i) + "," + verdict + "," + std::to_string(rep.dimension);
  }
  return row;
}

TrialRow abelian_trial(const ExperimentSpec& spec, long i, Rng& rng) {
  GroupModel m = GroupModel::by_name(spec.model);
  if (!m.exact_backend())
    throw std::invalid_argument("abelian experiment needs a coordinate model");
  std::vector<GroupElement> full, lattice;
  for (int k = 0; k < m.dim() + 1; ++k) full.push_back(m.sample_exact(m.default_window(), rng));
  for (int k = 0; k < m.dim(); ++k) lattice.push_back(m.sample_exact(m.default_window(), rng));
  ModelDensityReport rf = model_density_check(m, full);
  ModelDensityReport rl = model_density_check(m, lattice);
  bool witness = rl.result.witness.has_value();
  TrialRow row;
  row.j = {{"trial", i},
           {"full_verdict", verdict_str(rf.result.verdict)},
           {"lattice_verdict", verdict_str(rl.result.verdict)},
           {"witness", witness}};
  row.csv = std::to_string(i) + "," + verdict_str(rf.result.verdict) + "," +
            verdict_str(rl.result.verdict) + "," + (witness ? "1" : "0");
  return row;
}

TrialRow nilpotent_trial(const ExperimentSpec& spec, long i, Rng& rng) {
  GroupModel m = GroupModel::by_name(spec.model);
  if (!m.exact_backend() || m.abelianization_dim() == m.dim())
    throw std::invalid_argument("nilpotent experiment needs a nilpotent coordinate model");
  std::vector<GroupElement> gens;
  for (int k = 0; k < m.abelianization_dim() + 1; ++k)
    gens.push_back(m.sample_exact(m.default_window(), rng));
  ModelDensityReport rep = model_density_check(m, gens);
  TrialRow row;
  row.j = {{"trial", i},
           {"verdict", verdict_str(rep.result.verdict)},
           {"reduced_dim", rep.reduced_dim}};
  row.csv = std::to_string(i) + "," + verdict_str(rep.result.verdict) + "," +
            std::to_string(rep.reduced_dim);
  return row;
}

TrialRow example5_trial(const ExperimentSpec& spec, long i, Rng& rng) {
  LineInstance inst = make_line_instance(rng);
  ClosureOptions opts;
  opts.word_length = effective_word_length(spec, 10);
  opts.rho = 0.2;
  LineDensityReport rep = analyze_line_instance(inst, opts);
  TrialRow row;
  row.j = {{"trial", i},
           {"u1", inst.u1.get_str()},
           {"u2", inst.u2.get_str()},
           {"abelian", verdict_str(rep.abelian.verdict)},
           {"central", verdict_str(rep.central.verdict)},
           {"dimension", rep.closure.dimension},
           {"z_outside", rep.z_outside_ball},
           {"words_inside", rep.words_inside_ball},
           {"neither", rep.neither_dense_nor_discrete}};
  row.csv = std::to_string(i) + "," + csv_num(inst.u1.get_d()) + "," + csv_num(inst.u2.get_d()) +
            "," + verdict_str(rep.abelian.verdict) + "," + verdict_str(rep.central.verdict) +
            "," + std::to_string(rep.closure.dimension) + "," +
            (rep.z_outside_ball ? "1" : "0") + "," + (rep.words_inside_ball ? "1" : "0") + "," +
            (rep.neither_dense_nor_discrete ? "1" : "0");
  return row;
}

TrialRow zradius_trial(const ExperimentSpec& spec, long i, Rng& rng) {
  GroupModel m = GroupModel::by_name(spec.model);
  double t = 0.0;
  GroupElement g = m.identity();
  const double frac = spec.trials > 1 ? static_cast<double>(i) / (spec.trials - 1) : 0.5;
  if (m.kind() == ModelKind::SL2R) {
    t = 0.25 + 0.20 * frac;  // straddles the contraction threshold log(sqrt 2)
    g = m.exp_float((Eigen::VectorXd(3) << 0.0, t, 0.0).finished());
  } else if (m.kind() == ModelKind::SO3) {
    t = 0.80 + 0.50 * frac;  // straddles the rotation threshold pi/3
    g = m.exp_float((Eigen::VectorXd(3) << 0.0, 0.0, t).finished());
  } else {
    g = draw(m, m.default_window(), rng);
  }
  ZRadiusOptions opts;
  opts.seed = Rng::derive(spec.seed, 0x5a5a5a5aULL + static_cast<std::uint64_t>(i));
  ZRadiusReport rep = estimate_z_radius(m, g, opts);
  TrialRow row;
  row.j = {{"trial", i},
           {"t", t},
           {"radius", rep.radius},
           {"failing_radius", rep.failing_radius},
           {"probes", rep.probes_run}};
  row.csv = std::to_string(i) + "," + csv_num(t) + "," + csv_num(rep.radius) + "," +
            csv_num(rep.failing_radius);
  return row;
}

TrialRow regularity_trial(const ExperimentSpec& spec, long i, Rng& rng) {
  GroupModel m = GroupModel::by_name(spec.model);
  GroupElement g = draw(m, m.default_window(), rng);
  GroupElement h = draw(m, m.default_window(), rng);
  int mult = unit_eigenvalue_multiplicity(m, g);
  bool regular = is_regular(m, g);
  GroupElement conj = m.multiply(m.multiply(h, g), m.inverse(h));
  bool invariant = unit_eigenvalue_multiplicity(m, conj) == mult;
  TrialRow row;
  row.j = {{"trial", i}, {"multiplicity", mult}, {"regular", regular},
           {"conj_invariant", invariant}};
  row.csv = std::to_string(i) + "," + std::to_string(mult) + "," + (regular ? "1" : "0") + "," +
            (invariant ? "1" : "0");
  return row;
}

TrialRow optimality_trial_row(const ExperimentSpec& spec, long i, Rng& rng) {
  OptimalityTrial trial = optimality_trial(spec.pieces, spec.delta, rng);
  json slots = json::array();
  for (int s : trial.slots) slots.push_back(s);
  TrialRow row;
  row.j = {{"trial", i},
           {"event", trial.permutation_event},
           {"slots", slots},
           {"certified", trial.certificate.valid},
           {"lambda", trial.certificate.lambda},
           {"margin", trial.certificate.worst_margin}};
  row.csv = std::to_string(i) + "," + (trial.permutation_event ? "1" : "0") + "," +
            (trial.certificate.valid ? "1" : "0") + "," + csv_num(trial.certificate.lambda) +
            "," + csv_num(trial.certificate.worst_margin);
  return row;
}

TrialRow densecheck_trial(const ExperimentSpec&, long i, Rng& rng) {
  const int n = 1 + static_cast<int>(i % 3);
  const bool torus = ((i / 3) % 2) == 1;
  GroupModel m = torus ? GroupModel::torus(n) : GroupModel::euclidean(n);
  const int k = 1 + static_cast<int>(i % (n + 2));
  std::vector<GroupElement> gens;
  json gen_strs = json::array();
  for (int c = 0; c < k; ++c) {
    gens.push_back(m.sample_exact(m.default_window(), rng));
    gen_strs.push_back(field_vector_str(gens.back().x));
  }
  ModelDensityReport rep = model_density_check(m, gens);
  TrialRow row;
  row.j = {{"trial", i},
           {"model", m.name()},
           {"n", n},
           {"k", k},
           {"gens", gen_strs},
           {"verdict", verdict_str(rep.result.verdict)},
           {"witness", rep.result.witness.has_value()}};
  row.csv = std::to_string(i) + "," + m.name() + "," + std::to_string(n) + "," +
            std::to_string(k) + "," + verdict_str(rep.result.verdict) + "," +
            (rep.result.witness.has_value() ? "1" : "0");
  return row;
}

struct ExperimentDef {
  const char* header;
  TrialRow (*build)(const ExperimentSpec&, long, Rng&);
};

const ExperimentDef& experiment_def(const std::string& id) {
  static const std::map<std::string, ExperimentDef> defs = {
      {"theorem", {"trial,verdict,value", &theorem_trial}},
      {"abelian", {"trial,full_verdict,lattice_verdict,witness", &abelian_trial}},
      {"nilpotent", {"trial,verdict,reduced_dim", &nilpotent_trial}},
      {"example5",
       {"trial,u1,u2,abelian,central,dimension,z_outside,words_inside,neither",
        &example5_trial}},
      {"zradius", {"trial,t,radius,failing_radius", &zradius_trial}},
      {"regularity", {"trial,multiplicity,regular,conj_invariant", &regularity_trial}},
      {"optimality", {"trial,event,certified,lambda,margin", &optimality_trial_row}},
      {"densecheck", {"trial,model,n,k,verdict,witness", &densecheck_trial}},
  };
  auto it = defs.find(id);
  if (it == defs.end()) throw std::invalid_argument("unknown experiment id: " + id);
  return it->second;
}

json summarize(const ExperimentSpec& spec, const std::vector<json>& rows) {
  json s = {{"id", spec.id}, {"model", spec.model}, {"trials", spec.trials},
            {"seed", spec.seed}};
  auto count_if = [&rows](const std::function<bool(const json&)>& pred) {
    long c = 0;
    for (const json& r : rows)
      if (pred(r)) ++c;
    return c;
  };
  auto frac = [&](long c) {
    return rows.empty() ? 0.0 : static_cast<double>(c) / static_cast<double>(rows.size());
  };
  if (spec.id == "theorem" || spec.id == "nilpotent") {
    long dense = count_if([](const json& r) {
      std::string v = r.at("verdict");
      return v == "dense" || v == "dense-evidence";
    });
    s["dense"] = dense;
    s["fraction_dense"] = frac(dense);
  } else if (spec.id == "abelian") {
    long full = count_if([](const json& r) { return r.at("full_verdict") == "dense"; });
    long lattice = count_if([](const json& r) { return r.at("lattice_verdict") == "not-dense"; });
    long wit = count_if([](const json& r) { return r.at("witness").get<bool>(); });
    s["full_dense"] = full;
    s["fraction_full_dense"] = frac(full);
    s["lattice_not_dense"] = lattice;
    s["fraction_lattice_not_dense"] = frac(lattice);
    s["witnesses"] = wit;
  } else if (spec.id == "example5") {
    long line = count_if([](const json& r) { return r.at("dimension").get<int>() == 1; });
    long neither = count_if([](const json& r) { return r.at("neither").get<bool>(); });
    s["dimension_one"] = line;
    s["fraction_dimension_one"] = frac(line);
    s["neither_dense_nor_discrete"] = neither;
  } else if (spec.id == "zradius") {
    long fullr = count_if([](const json& r) { return r.at("failing_radius").get<double>() == 0; });
    long zero = count_if([](const json& r) { return r.at("radius").get<double>() == 0; });
    s["full_range"] = fullr;
    s["collapsed"] = zero;
  } else if (spec.id == "regularity") {
    long nonreg = count_if([](const json& r) { return !r.at("regular").get<bool>(); });
    long broken = count_if([](const json& r) { return !r.at("conj_invariant").get<bool>(); });
    s["non_regular"] = nonreg;
    s["conjugation_violations"] = broken;
  } else if (spec.id == "optimality") {
    long events = count_if([](const json& r) { return r.at("event").get<bool>(); });
    long certified = count_if([](const json& r) {
      return r.at("event").get<bool>() && r.at("certified").get<bool>();
    });
    s["events"] = events;
    s["event_fraction"] = frac(events);
    s["certified_events"] = certified;
  } else if (spec.id == "densecheck") {
    long dense = count_if([](const json& r) { return r.at("verdict") == "dense"; });
    long notdense = count_if([](const json& r) { return r.at("verdict") == "not-dense"; });
    s["dense"] = dense;
    s["not_dense"] = notdense;
    s["inconclusive"] = static_cast<long>(rows.size()) - dense - notdense;
  }
  return s;
}

}  // namespace

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids = {"theorem",  "abelian",   "nilpotent",
                                               "example5", "zradius",   "regularity",
                                               "optimality", "densecheck"};
  return ids;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  if (spec.trials < 0) throw std::invalid_argument("run_experiment: negative trial count");
  const ExperimentDef& def = experiment_def(spec.id);
  ExperimentResult result;
  result.id = spec.id;
  result.csv_header = def.header;

  std::vector<json> rows(static_cast<size_t>(spec.trials));
  std::vector<std::string> csv(static_cast<size_t>(spec.trials));
  const int jobs = std::max(1, spec.jobs);
  std::atomic<long> next{0};
  std::vector<std::string> errors(static_cast<size_t>(jobs));
  auto worker = [&](int slot) {
    try {
      for (long i = next.fetch_add(1); i < spec.trials; i = next.fetch_add(1)) {
        Rng rng(Rng::derive(spec.seed, static_cast<std::uint64_t>(i)));
        TrialRow row = def.build(spec, i, rng);
        rows[static_cast<size_t>(i)] = std::move(row.j);
        csv[static_cast<size_t>(i)] = std::move(row.csv);
      }
    } catch (const std::exception& e) {
      errors[static_cast<size_t>(slot)] = e.what();
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker, j);
    for (std::thread& th : pool) th.join();
  }
  for (const std::string& err : errors)
    if (!err.empty()) throw std::runtime_error("experiment trial failed: " + err);

  for (size_t i = 0; i < rows.size(); ++i) {
    result.json_rows.push_back(rows[i].dump());
    result.csv_rows.push_back(csv[i]);
  }
  result.summary_json = summarize(spec, rows).dump(2);
  return result;
}

void write_experiment(const ExperimentResult& result, const std::string& out_dir,
                      double wall_ms) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  {
    std::ofstream jsonl(fs::path(out_dir) / "rows.jsonl");
    for (const std::string& row : result.json_rows) jsonl << row << '\n';
  }
  {
    std::ofstream csv(fs::path(out_dir) / "rows.csv");
    csv << result.csv_header << '\n';
    for (const std::string& row : result.csv_rows) csv << row << '\n';
  }
  {
    std::ofstream summary(fs::path(out_dir) / "summary.json");
    summary << result.summary_json << '\n';
  }
  {
    char buf[64];
    std::snprintf(buf, sizeof buf, "{\"wall_ms\": %.3f}", wall_ms);
    std::ofstream timing(fs::path(out_dir) / "timing.json");
    timing << buf << '\n';
  }
}

}  // namespace denselab
