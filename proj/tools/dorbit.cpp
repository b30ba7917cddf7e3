// Command-line front end: certify, sweep, oracle, pattern, construct.

#include <CLI11.hpp>

#include <atomic>
#include <iostream>
#include <thread>

#include "dorbit/io.hpp"

using namespace dorbit;

namespace {

constexpr int kOk = 0;
constexpr int kVerdictFailure = 1;
constexpr int kInputError = 2;

struct RunConfig {
  std::string command;
  std::string quiver_path;
  std::string dim;
  std::string field = "q";
  std::uint64_t seed = 1;
  std::size_t trials = 3;
  long max_sum = 0;
  long max_entry = 0;
  std::string format = "table";
  std::size_t workers = 1;
  std::string which = "sn";
  bool full = false;
};

json config_json(const RunConfig& c) {
  json j = {{"command", c.command}, {"quiver", c.quiver_path}, {"field", c.field}, {"seed", c.seed},
            {"trials", c.trials},   {"format", c.format}};
  if (!c.dim.empty()) j["dim"] = c.dim;
  if (c.max_sum) j["max_sum"] = c.max_sum;
  if (c.max_entry) j["max_entry"] = c.max_entry;
  if (c.command == "sweep") j["workers"] = c.workers;
  if (c.command == "pattern") j["which"] = c.which;
  if (c.command == "certify") j["full"] = c.full;
  return j;
}

enum class Verdict { certified, no_dense_orbit, no_certificate, inconsistent };

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::certified: return "dense orbit (rigid module certified)";
    case Verdict::no_dense_orbit: return "no dense orbit for this d";
    case Verdict::no_certificate: return "no certificate";
    case Verdict::inconsistent: return "certificates disagree";
  }
  return "";
}

struct Outcome {
  Verdict verdict = Verdict::no_certificate;
  json report;
};

// The rigid-module certificate for one d. Constructions run on the
// standard relabeling so that End P(d) is an upper block algebra.
Outcome certify_one(const Quiver& q, const DimensionVector& d, const RunConfig& cfg) {
  Outcome out;
  json& r = out.report;
  auto cls = is_dynkin(q);
  long tf = tits_form(q, d);
  r["d"] = to_json(d);
  r["type"] = cls.type().label();
  r["dynkin"] = cls.dynkin;
  r["tits_form"] = tf;
  if (d.is_zero()) {
    r["verdict"] = verdict_name(Verdict::certified);
    r["route"] = "zero";
    r["end_dim"] = 0;
    r["sum_squares"] = 0;
    r["rigid"] = true;
    r["richardson"] = true;
    out.verdict = Verdict::certified;
    return out;
  }
  if (!cls.dynkin) {
    if (auto w = null_root_witness(q)) {
      r["witness"] = to_json(*w);
      r["witness_tits_form"] = tits_form(q, *w);
    }
    if (tf <= 0) {
      r["verdict"] = verdict_name(Verdict::no_dense_orbit);
      r["explanation"] =
          "tits_form(d) = " + std::to_string(tf) +
          " <= 0, so Rep(Q^op, d) has no dense GL(d)-orbit; a dense Aut P(d)-orbit in radEnd P(d) would give one in "
          "radEnd P(d) / (radEnd P(d))^2, whose orbits are the isomorphism classes in Rep(Q^op, d)";
      out.verdict = Verdict::no_dense_orbit;
      return out;
    }
  }
  auto label = standard_labeling(q);
  Quiver qs = relabel(q, label);
  DimensionVector ds = relabel(d, label);
  ConstructOptions opt;
  opt.seed = cfg.seed;
  opt.max_trials = cfg.trials;
  auto built = construct_rigid(qs, ds, opt);
  r["route"] = built.route;
  if (built.kase) r["case"] = to_json(*built.kase);
  if (built.plan) r["dual"] = built.plan->dual;
  if (!built.note.empty()) r["note"] = built.note;
  if (!built.module) {
    r["verdict"] = verdict_name(Verdict::no_certificate);
    out.verdict = Verdict::no_certificate;
    return out;
  }
  r["trial"] = built.trial;
  const DModule& x = *built.module;
  bool rigid = false;
  if (cfg.full) {
    auto c = certify(x);
    r["end_dim"] = c.end_dim_D;
    r["sum_squares"] = c.sum_squares;
    r["ext1_exact_sequence"] = c.ext1_exact_sequence;
    r["ext1_resolution"] = c.ext1_resolution;
    rigid = c.rigid;
  } else {
    auto rc = resolution_counts(x);
    r["end_dim"] = rc.end_dim();
    r["sum_squares"] = d.sum_of_squares();
    r["ext1_resolution"] = rc.ext1_dim();
    rigid = rc.ext1_dim() == 0 && static_cast<long>(rc.end_dim()) == d.sum_of_squares();
  }
  r["rigid"] = rigid;
  bool richardson = false;
  try {
    auto rs = quiver_to_rootsubset(qs);
    auto sp = block_pattern(rs, ds, PatternKind::s), np = block_pattern(rs, ds, PatternKind::n);
    auto rr = richardson_rank(sp, np, rad_endo_to_matrix(x, np));
    richardson = rr.dense();
    r["richardson"] = richardson;
    r["ad_rank"] = rr.rank;
    r["n_dim"] = rr.n_dim;
  } catch (const std::invalid_argument& e) {
    // several paths between two vertices: End P(d) is not the block algebra
    r["richardson"] = nullptr;
    r["richardson_note"] = e.what();
    richardson = rigid;
  }
  out.verdict = rigid && richardson ? Verdict::certified : Verdict::inconsistent;
  r["verdict"] = verdict_name(out.verdict);
  return out;
}

std::string field_or_blank(const json& r, const char* key) {
  if (!r.contains(key) || r[key].is_null()) return "-";
  const auto& v = r[key];
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_object() && v.contains("tag")) return v["tag"].get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) s += (s.empty() ? "" : ",") + e.dump();
    return s;
  }
  return v.dump();
}

void print_table_header(std::ostream& os, const RunConfig& cfg) {
  os << "# " << config_json(cfg).dump() << "\n";
  os << "d\ttype\ttits\troute\tcase\ttrial\tend_dim\tsum_sq\trigid\trichardson\tverdict\n";
}

void print_table_row(std::ostream& os, const json& r) {
  for (const char* k : {"d", "type", "tits_form", "route", "case", "trial", "end_dim", "sum_squares", "rigid", "richardson"}) {
    os << field_or_blank(r, k) << "\t";
  }
  os << field_or_blank(r, "verdict") << "\n";
}

Quiver read_quiver(const RunConfig& cfg) { return load_quiver(cfg.quiver_path); }

DimensionVector read_dim(const RunConfig& cfg, const Quiver& q) {
  if (cfg.dim.empty()) throw std::invalid_argument("--dim is required");
  auto d = DimensionVector::parse(cfg.dim);
  q.check_dimension(d);
  return d;
}

void require_rational(const RunConfig& cfg) {
  if (Field::parse(cfg.field) != Field::rationals()) {
    throw std::invalid_argument("constructions and certificates run over q; use --field with the oracle command");
  }
}

int cmd_certify(const RunConfig& cfg) {
  require_rational(cfg);
  Quiver q = read_quiver(cfg);
  auto d = read_dim(cfg, q);
  auto o = certify_one(q, d, cfg);
  if (cfg.format == "json") {
    std::cout << json{{"config", config_json(cfg)}, {"result", o.report}}.dump(2) << "\n";
  } else {
    print_table_header(std::cout, cfg);
    print_table_row(std::cout, o.report);
    if (o.report.contains("witness")) std::cout << "# null-root witness: " << field_or_blank(o.report, "witness") << "\n";
    if (o.report.contains("explanation")) std::cout << "# " << o.report["explanation"].get<std::string>() << "\n";
  }
  bool decided = o.verdict == Verdict::certified || o.verdict == Verdict::no_dense_orbit;
  return decided ? kOk : kVerdictFailure;
}

std::vector<DimensionVector> sweep_vectors(int n, long max_sum, long max_entry) {
  std::vector<DimensionVector> out;
  std::vector<long> d(static_cast<std::size_t>(n), 0);
  long cap = max_entry ? max_entry : max_sum;
  // lexicographic, last coordinate fastest
  std::function<void(std::size_t, long)> rec = [&](std::size_t k, long sum) {
    if (k == d.size()) {
      if (sum > 0) out.emplace_back(d);
      return;
    }
    for (long v = 0; v <= cap; ++v) {
      if (max_sum && sum + v > max_sum) break;
      d[k] = v;
      rec(k + 1, sum + v);
    }
    d[k] = 0;
  };
  rec(0, 0);
  return out;
}

int cmd_sweep(const RunConfig& cfg) {
  require_rational(cfg);
  if (cfg.max_sum <= 0 && cfg.max_entry <= 0) throw std::invalid_argument("sweep needs --max-sum or --max-entry");
  Quiver q = read_quiver(cfg);
  auto ds = sweep_vectors(q.vertex_count(), cfg.max_sum, cfg.max_entry);
  std::vector<Outcome> results(ds.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::string> errors(ds.size());
  auto work = [&] {
    for (std::size_t i; (i = next++) < ds.size();) {
      try {
        results[i] = certify_one(q, ds[i], cfg);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < std::max<std::size_t>(cfg.workers, 1); ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  bool dynkin = is_dynkin(q).dynkin;
  std::size_t certified = 0, failed = 0;
  std::vector<json> rows;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (!errors[i].empty()) {
      results[i].report = {{"d", to_json(ds[i])}, {"verdict", "error: " + errors[i]}};
      results[i].verdict = Verdict::inconsistent;
    }
    if (results[i].verdict == Verdict::certified) ++certified;
    bool bad = results[i].verdict == Verdict::inconsistent || (dynkin && results[i].verdict != Verdict::certified);
    if (bad) ++failed;
    rows.push_back(results[i].report);
  }
  json body = {{"vectors", ds.size()}, {"certified", certified}, {"failed", failed}, {"rows", rows}};
  if (cfg.format == "json") {
    std::cout << json{{"config", config_json(cfg)}, {"result", body}}.dump(2) << "\n";
  } else {
    print_table_header(std::cout, cfg);
    for (const auto& r : rows) print_table_row(std::cout, r);
    std::cout << "# vectors " << ds.size() << ", certified " << certified << ", failed " << failed << "\n";
  }
  return failed ? kVerdictFailure : kOk;
}

int cmd_oracle(const RunConfig& cfg) {
  Quiver q = read_quiver(cfg);
  auto d = read_dim(cfg, q);
  Field f = Field::parse(cfg.field == "q" ? "fp:2" : cfg.field);
  if (f.is_rational()) throw std::invalid_argument("the oracle needs a prime field");
  auto c = orbit_census_fq(q, {}, d, f.characteristic());
  RunConfig cert_cfg = cfg;
  cert_cfg.field = "q";
  auto o = certify_one(q, d, cert_cfg);
  bool dense = c.max_orbit_dim == c.rep_dim;
  json body = {{"d", to_json(d)},
               {"p", f.characteristic()},
               {"points", c.points},
               {"orbits", c.orbit_count},
               {"rep_dim", c.rep_dim},
               {"max_orbit_dim", c.max_orbit_dim},
               {"dense_orbit_in_rep", dense},
               {"certificate", o.report}};
  // a certified rigid module and a census without a dense orbit cannot both hold
  bool agree = !(o.verdict == Verdict::certified && !dense) && !(o.verdict == Verdict::no_dense_orbit && dense);
  body["consistent"] = agree;
  if (cfg.format == "json") {
    std::cout << json{{"config", config_json(cfg)}, {"result", body}}.dump(2) << "\n";
  } else {
    std::cout << "# " << config_json(cfg).dump() << "\n";
    std::cout << "d\tp\tpoints\torbits\trep_dim\tmax_orbit_dim\tdense_in_rep\tcertificate\tconsistent\n";
    std::cout << field_or_blank(body, "d") << "\t" << f.characteristic() << "\t" << c.points << "\t" << c.orbit_count << "\t" << c.rep_dim << "\t"
              << c.max_orbit_dim << "\t" << (dense ? "yes" : "no") << "\t" << verdict_name(o.verdict) << "\t"
              << (agree ? "yes" : "no") << "\n";
  }
  return agree ? kOk : kVerdictFailure;
}

int cmd_pattern(const RunConfig& cfg) {
  Quiver q = read_quiver(cfg);
  auto d = read_dim(cfg, q);
  auto label = standard_labeling(q);
  Quiver qs = relabel(q, label);
  DimensionVector ds = relabel(d, label);
  auto rs = quiver_to_rootsubset(qs);
  json body = {{"labeling", label}, {"d_standard", to_json(ds)}, {"patterns", json::array()}};
  std::string text = "# " + config_json(cfg).dump() + "\n";
  text += "# standard labeling (vertex -> block):";
  for (std::size_t v = 0; v < label.size(); ++v) text += " " + std::to_string(v + 1) + "->" + std::to_string(label[v]);
  text += "\n";
  for (char w : cfg.which) {
    auto p = block_pattern(rs, ds, parse_pattern_kind(std::string(1, w)));
    body["patterns"].push_back(to_json(p));
    text += std::string(1, w) + "(d): dimension " + std::to_string(p.dimension()) + "\n" + render_ascii(p);
  }
  if (cfg.format == "json") {
    std::cout << json{{"config", config_json(cfg)}, {"result", body}}.dump(2) << "\n";
  } else {
    std::cout << text;
  }
  return kOk;
}

int cmd_construct(const RunConfig& cfg) {
  require_rational(cfg);
  Quiver q = read_quiver(cfg);
  auto d = read_dim(cfg, q);
  ConstructOptions opt;
  opt.seed = cfg.seed;
  opt.max_trials = cfg.trials;
  auto built = construct_rigid(q, d, opt);
  json body = {{"route", built.route}};
  if (built.kase) body["case"] = to_json(*built.kase);
  if (!built.note.empty()) body["note"] = built.note;
  if (built.module) {
    body["trial"] = built.trial;
    body["certificate"] = to_json(certify(*built.module));
    body["module"] = to_json(*built.module);
  }
  std::cout << json{{"config", config_json(cfg)}, {"result", body}}.dump(2) << "\n";
  return built.module ? kOk : kVerdictFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rigid good modules over double-quiver algebras and dense orbit certificates"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto add_common = [&](CLI::App* sub, bool needs_dim) {
    sub->add_option("--quiver", cfg.quiver_path, "quiver file")->required();
    auto* o = sub->add_option("--dim", cfg.dim, "dimension vector, e.g. 1,2,1");
    if (needs_dim) o->required();
    sub->add_option("--field", cfg.field, "q or fp:P");
    sub->add_option("--seed", cfg.seed, "seed for generic completion");
    sub->add_option("--trials", cfg.trials, "generic completion trial budget")->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format, "table or json")->check(CLI::IsMember({"table", "json"}));
  };
  auto* certify_cmd = app.add_subcommand("certify", "construct and certify a rigid module for one d");
  add_common(certify_cmd, true);
  certify_cmd->add_flag("--full", cfg.full, "also compute End_D by the exact sequence");
  auto* sweep_cmd = app.add_subcommand("sweep", "certify every d within bounds");
  add_common(sweep_cmd, false);
  sweep_cmd->add_option("--max-sum", cfg.max_sum, "bound on the sum of d");
  sweep_cmd->add_option("--max-entry", cfg.max_entry, "bound on each entry of d");
  sweep_cmd->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
  auto* oracle_cmd = app.add_subcommand("oracle", "count orbits in Rep(Q, d) over F_p");
  add_common(oracle_cmd, true);
  auto* pattern_cmd = app.add_subcommand("pattern", "print the s(d), n(d), b(d), l(d) block patterns");
  add_common(pattern_cmd, true);
  pattern_cmd->add_option("--which", cfg.which, "letters from snbl");
  auto* construct_cmd = app.add_subcommand("construct", "emit a rigid module as JSON");
  add_common(construct_cmd, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  try {
    if (*certify_cmd) return cfg.command = "certify", cmd_certify(cfg);
    if (*sweep_cmd) return cfg.command = "sweep", cmd_sweep(cfg);
    if (*oracle_cmd) return cfg.command = "oracle", cmd_oracle(cfg);
    if (*pattern_cmd) return cfg.command = "pattern", cmd_pattern(cfg);
    if (*construct_cmd) return cfg.command = "construct", cfg.format = "json", cmd_construct(cfg);
  } catch (const ParseError& e) {
    std::cerr << "dorbit: " << cfg.quiver_path << ": " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "dorbit: " << e.what() << "\n";
    return kInputError;
  } catch (const std::length_error& e) {
    std::cerr << "dorbit: " << e.what() << "\n";
    return kInputError;
  } catch (const std::runtime_error& e) {
    std::cerr << "dorbit: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
