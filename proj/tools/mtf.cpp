#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "mtf/branching.hpp"
#include "mtf/coding.hpp"
#include "mtf/cyclic.hpp"
#include "mtf/enumeration.hpp"
#include "mtf/json_io.hpp"
#include "mtf/lagrange.hpp"
#include "mtf/verify.hpp"

namespace {

using mtf::Json;

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

constexpr const char* kSchemaHelp = R"(JSON schemas (colors and types are 1-based):
  mtf.forest/1     {"schema": "mtf.forest/1", "d": 2,
                    "trees": [{"color": 1, "children": [{"color": 2, "children": []}]}]}
                   Siblings must be listed in nondecreasing color order.
  mtf.coding/1     {"schema": "mtf.coding/1", "d": 2, "lengths": [1, 1],
                    "increments": [[[-1, 1]], [[0, -1]]], "root_types": [1]}
                   increments[i][m] is step m+1 of path i; root_types is optional.
  mtf.law/1        {"schema": "mtf.law/1", "d": 2,
                    "nu": [{"0,1": "1/1"}, {"0,0": "1/1"}]}
                   One object per type mapping offspring vectors to "p/q" weights.
  mtf.signature/1  {"schema": "mtf.signature/1", "roots": [1, 0], "sizes": [2, 1],
                    "offdiag": [[0, 1], [0, 0]], "indegree": [...], "census": [...],
                    "degrees": [...]}
                   indegree[i][k] is the offspring vector of the k-th type-i vertex;
                   census entries are {"type", "offspring", "count"}; degrees is a
                   single-type child-count sequence. The last three are optional.
Exit codes: 0 success, 1 verification mismatch, 2 usage or input error.)";

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw mtf::InvalidArgument("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

mtf::IntMatrix parse_matrix(const std::string& text, int d) {
  mtf::IntMatrix m = mtf::IntMatrix::square(d);
  if (text.empty()) return m;
  std::size_t pos = 0;
  int row = 0;
  while (true) {
    const std::size_t semi = text.find(';', pos);
    const std::string part = text.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
    const mtf::IntVec v = mtf::parse_int_list(part);
    if (row >= d || static_cast<int>(v.size()) != d)
      throw mtf::InvalidArgument("matrix must be d rows of d entries separated by ';'");
    for (int j = 0; j < d; ++j) m(row, j) = row == j ? 0 : v[j];
    ++row;
    if (semi == std::string::npos) break;
    pos = semi + 1;
  }
  if (row != d) throw mtf::InvalidArgument("matrix must have d rows");
  return m;
}

Json matrix_json(const mtf::IntMatrix& m) {
  Json out = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    mtf::IntVec row;
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

Json rational_json(const mtf::Rational& q) { return Json{{"exact", mtf::to_string(q)}, {"decimal", mtf::to_decimal(q)}}; }

void check_size(const mtf::IntVec& v, int d, const char* what) {
  if (static_cast<int>(v.size()) != d)
    throw mtf::InvalidArgument(std::string(what) + " needs " + std::to_string(d) + " entries");
}

struct Options {
  std::string out = "-";
  std::string forest = "-";
  std::string coding = "-";
  std::string law;
  std::string sig;
  std::string roots;
  std::string root_types;
  std::string n;
  std::string offdiag;
  std::string formula;
  std::string laws_dir;
  std::string only;
  bool oracle = false;
  double width = 1e-12;
  std::optional<std::uint64_t> seed;
  std::int64_t replicas = 100000;
  std::int64_t cap = 1000;
  int exact_max = 30;
  std::optional<int> verify_cap;
  std::optional<std::int64_t> walk_steps;
  int jobs = 1;
};

int cmd_encode(const Options& o) {
  const mtf::TypedForest f = mtf::forest_from_json(mtf::read_json_file(o.forest));
  Output out(o.out);
  out.stream() << mtf::render(mtf::coding_to_json(mtf::encode(f), f.root_types()));
  return kOk;
}

int cmd_decode(const Options& o) {
  const mtf::CodingDocument doc = mtf::coding_from_json(mtf::read_json_file(o.coding));
  mtf::RootTypeSequence c;
  if (!o.root_types.empty()) {
    for (int t : mtf::parse_int_list(o.root_types)) c.push_back(t - 1);
  } else if (doc.root_types) {
    c = *doc.root_types;
  } else {
    throw mtf::InvalidArgument("decode needs root_types in the coding document or --root-types");
  }
  const int d = doc.x.types();
  for (mtf::Color t : c)
    if (t < 0 || t >= d) throw mtf::InvalidArgument("root type out of range");
  const mtf::TypedForest f = mtf::decode(doc.x, c, mtf::root_counts(d, c));
  Output out(o.out);
  out.stream() << mtf::render(mtf::forest_to_json(f));
  return kOk;
}

int cmd_classify(const Options& o) {
  const mtf::OffspringLaw law = mtf::law_from_json(mtf::read_json_file(o.law));
  Json report;
  report["command"] = "classify";
  report["config"] = Json{{"law", o.law}, {"width", o.width}};
  try {
    const mtf::Classification c = mtf::classify(law, o.width);
    mtf::Matrix<mtf::Rational> m = c.mean;
    Json mean = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
      Json row = Json::array();
      for (int j = 0; j < m.cols(); ++j) row.push_back(mtf::to_string(m(i, j)));
      mean.push_back(row);
    }
    report["mean_matrix"] = std::move(mean);
    report["irreducible"] = c.irreducible;
    report["degenerate"] = c.degenerate;
    report["rho_exact"] = c.rho_exact;
    report["rho_lower"] = rational_json(c.rho_lower);
    report["rho_upper"] = rational_json(c.rho_upper);
    report["regime"] = mtf::to_string(c.regime);
  } catch (const mtf::RegimeError& e) {
    report["regime"] = "undetermined";
    report["error"] = e.what();
    Output out(o.out);
    out.stream() << mtf::render(report);
    return kMismatch;
  }
  Output out(o.out);
  out.stream() << mtf::render(report);
  return kOk;
}

int cmd_progeny_law(const Options& o) {
  const mtf::OffspringLaw law = mtf::law_from_json(mtf::read_json_file(o.law));
  const int d = law.types();
  const mtf::IntVec r = mtf::parse_int_list(o.roots);
  const mtf::IntVec n = mtf::parse_int_list(o.n);
  check_size(r, d, "--roots");
  check_size(n, d, "--n");
  Json report;
  report["command"] = "progeny-law";
  Json config{{"law", o.law}, {"roots", r}, {"n", n}};
  mtf::Rational p;
  if (o.offdiag.empty()) {
    p = mtf::marginal_progeny_law(law, r, n);
    config["offdiag"] = nullptr;
  } else {
    const mtf::IntMatrix a = parse_matrix(o.offdiag, d);
    config["offdiag"] = matrix_json(a);
    p = mtf::progeny_law(law, r, n, a);
  }
  report["config"] = std::move(config);
  report["probability"] = mtf::to_string(p);
  report["decimal"] = mtf::to_decimal(p);
  Output out(o.out);
  out.stream() << mtf::render(report);
  return kOk;
}

int cmd_simulate(const Options& o) {
  if (!o.seed) throw mtf::InvalidArgument("simulate needs --seed");
  const mtf::OffspringLaw law = mtf::law_from_json(mtf::read_json_file(o.law));
  const int d = law.types();
  const mtf::IntVec r = mtf::parse_int_list(o.roots);
  check_size(r, d, "--roots");
  const mtf::RootTypeSequence c = mtf::canonical_roots(r);
  const mtf::EventTable table = mtf::simulate_events(law, c, *o.seed, o.replicas, o.cap, o.jobs);
  mtf::ProgenyCalculator calc(law);
  Json events = Json::array();
  for (const auto& [e, count] : table.counts) {
    Json row{{"n", e.sizes},
             {"offdiag", matrix_json(e.offdiag)},
             {"count", count},
             {"frequency", mtf::to_decimal(mtf::ratio(count, table.replicas))}};
    if (mtf::sum(e.sizes) <= o.exact_max) {
      const mtf::Rational p = calc.joint(r, e.sizes, e.offdiag);
      row["probability"] = mtf::to_string(p);
      row["probability_decimal"] = mtf::to_decimal(p);
    }
    events.push_back(std::move(row));
  }
  Json report;
  report["command"] = "simulate";
  report["config"] = Json{{"law", o.law}, {"roots", r}, {"seed", *o.seed}, {"replicas", o.replicas},
                          {"cap", o.cap}, {"exact_max", o.exact_max}};
  report["truncated"] = table.truncated;
  report["events"] = std::move(events);
  Output out(o.out);
  out.stream() << mtf::render(report);
  return kOk;
}

int cmd_count_forests(const Options& o) {
  const mtf::SignatureDocument doc = mtf::signature_from_json(mtf::read_json_file(o.sig));
  const mtf::Signature& sig = doc.sig;
  mtf::BigInt count;
  std::optional<mtf::BigInt> oracle;
  auto need = [&](bool present, const char* field) {
    if (!present) throw mtf::InvalidArgument(std::string("formula needs \"") + field + "\" in the signature");
  };
  if (o.formula == "plane") {
    count = mtf::count_plane_forests(sig);
    if (o.oracle) oracle = mtf::brute_force_plane(sig);
  } else if (o.formula == "indegree") {
    need(doc.indegree.has_value(), "indegree");
    count = mtf::count_labeled_by_indegree(sig, *doc.indegree);
    if (o.oracle) oracle = mtf::brute_force_labeled_by_indegree(sig, *doc.indegree);
  } else if (o.formula == "edge-types") {
    count = mtf::count_labeled_by_edge_types(sig);
    if (o.oracle) oracle = mtf::brute_force_labeled_by_edge_types(sig, mtf::LabeledMethod::materialize);
  } else if (o.formula == "injective") {
    count = mtf::count_injective(sig);
    if (o.oracle) oracle = mtf::brute_force_injective(sig);
  } else if (o.formula == "labeled-census") {
    need(doc.census.has_value(), "census");
    count = mtf::count_labeled_by_census(sig, *doc.census);
    if (o.oracle) oracle = mtf::brute_force_labeled_by_census(sig, *doc.census, mtf::LabeledMethod::materialize);
  } else if (o.formula == "unlabeled-census") {
    need(doc.census.has_value(), "census");
    count = mtf::count_unlabeled_by_census(sig, *doc.census);
    if (o.oracle) oracle = mtf::brute_force_unlabeled_by_census(sig, *doc.census);
  } else if (o.formula == "degrees") {
    need(doc.degrees.has_value(), "degrees");
    count = mtf::count_single_type_by_degrees(*doc.degrees);
    if (o.oracle) oracle = mtf::brute_force_single_type_by_degrees(*doc.degrees);
  } else {
    throw mtf::InvalidArgument("unknown formula " + o.formula);
  }
  Json report;
  report["command"] = "count-forests";
  report["config"] = Json{{"formula", o.formula}, {"sig", o.sig}, {"oracle", o.oracle}};
  report["count"] = mtf::to_string(count);
  bool agree = true;
  if (oracle) {
    agree = *oracle == count;
    report["oracle"] = mtf::to_string(*oracle);
    report["agree"] = agree;
  }
  Output out(o.out);
  out.stream() << mtf::render(report);
  return agree ? kOk : kMismatch;
}

int cmd_cyclic_count(const Options& o) {
  const mtf::CodingDocument doc = mtf::coding_from_json(mtf::read_json_file(o.coding));
  const mtf::CodingSequence& x = doc.x;
  const int d = x.types();
  mtf::IntVec r;
  if (!o.roots.empty())
    r = mtf::parse_int_list(o.roots);
  else if (doc.root_types)
    r = mtf::root_counts(d, *doc.root_types);
  else
    throw mtf::InvalidArgument("cyclic-count needs --roots or root_types in the coding document");
  check_size(r, d, "--roots");
  const mtf::IntVec n = x.lengths();
  const std::uint64_t brute = mtf::count_good_shifts(r, x, n);
  const mtf::BigInt det = mtf::cyclic_determinant(x, n);
  const mtf::IntMatrix k = mtf::endpoint_matrix(x, n);
  std::vector<int> keep;
  for (int i = 0; i < d; ++i)
    if (n[i] > 0) keep.push_back(i);
  const int a = static_cast<int>(keep.size());
  mtf::Matrix<mtf::BigInt> sub(a, a);
  std::vector<mtf::BigInt> sub_r;
  for (int p = 0; p < a; ++p) {
    sub_r.emplace_back(r[keep[p]]);
    for (int s = 0; s < a; ++s) sub(p, s) = k(keep[p], keep[s]);
  }
  const mtf::BigInt elementary =
      mtf::elementary_forest_sum<mtf::BigInt>(sub, sub_r, mtf::enumerate_elementary_forests(a));
  const bool agree = mtf::BigInt(static_cast<unsigned long>(brute)) == det && det == elementary;
  Json report;
  report["command"] = "cyclic-count";
  report["config"] = Json{{"coding", o.coding}, {"roots", r}};
  report["n"] = n;
  report["brute_force"] = std::to_string(brute);
  report["determinant"] = mtf::to_string(det);
  report["elementary_sum"] = mtf::to_string(elementary);
  report["agree"] = agree;
  Output out(o.out);
  out.stream() << mtf::render(report);
  return agree ? kOk : kMismatch;
}

int cmd_lagrange(const Options& o) {
  const mtf::OffspringLaw law = mtf::law_from_json(mtf::read_json_file(o.law));
  const int d = law.types();
  const mtf::IntVec r = mtf::parse_int_list(o.roots);
  const mtf::IntVec n = mtf::parse_int_list(o.n);
  check_size(r, d, "--roots");
  check_size(n, d, "--n");
  const int order = mtf::sum(n);
  std::vector<mtf::MultiSeries> f;
  for (int i = 0; i < d; ++i) f.push_back(mtf::series_from_law(law[i], d, order));
  const mtf::Rational rhs = mtf::lagrange_good_rhs(mtf::MultiSeries::monomial(d, order, r), f, n);
  const mtf::Rational lhs = mtf::lagrange_good_lhs(f, r, n);
  const mtf::Rational prob = mtf::marginal_progeny_law(law, r, n);
  const bool agree = lhs == rhs && rhs == prob;
  Json report;
  report["command"] = "lagrange-coeff";
  report["config"] = Json{{"law", o.law}, {"roots", r}, {"n", n}};
  report["lhs"] = rational_json(lhs);
  report["rhs"] = rational_json(rhs);
  report["progeny_law"] = rational_json(prob);
  report["agree"] = agree;
  Output out(o.out);
  out.stream() << mtf::render(report);
  return agree ? kOk : kMismatch;
}

int cmd_verify(const Options& o) {
  mtf::VerifyConfig cfg;
  if (o.verify_cap) {
    if (*o.verify_cap < 1) throw mtf::InvalidArgument("--cap must be positive");
    cfg.set_cap(*o.verify_cap);
  }
  if (o.seed) cfg.seed = *o.seed;
  cfg.replicas = o.replicas;
  if (o.walk_steps) cfg.walk_steps = *o.walk_steps;
  cfg.jobs = o.jobs;
  if (!o.only.empty()) cfg.only = mtf::parse_int_list(o.only);
  const mtf::DeskLaws laws = o.laws_dir.empty() ? mtf::desk_laws() : mtf::load_desk_laws(o.laws_dir);
  const auto results = mtf::run_verify(cfg, laws);
  Output out(o.out);
  out.stream() << mtf::render_report(cfg, results);
  for (const auto& r : results)
    if (!r.passed) return kMismatch;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multitype plane forests: coding, cyclic lemma, progeny laws and enumeration"};
  app.footer(kSchemaHelp);
  app.require_subcommand(1);
  Options o;

  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", o.out, "Output path ('-' for stdout)"); };

  auto* encode = app.add_subcommand("encode", "Encode a forest (mtf.forest/1) as a coding sequence (mtf.coding/1)");
  encode->add_option("--forest", o.forest, "Forest JSON path ('-' for stdin)");
  add_out(encode);

  auto* decode = app.add_subcommand("decode", "Decode a coding sequence (mtf.coding/1) into a forest");
  decode->add_option("--coding", o.coding, "Coding JSON path ('-' for stdin)");
  decode->add_option("--root-types", o.root_types, "Root type sequence, e.g. 1,2 (overrides root_types)");
  add_out(decode);

  auto* classify = app.add_subcommand("classify", "Irreducibility, spectral radius and regime of a law");
  classify->add_option("--law", o.law, "Law JSON path (mtf.law/1)")->required();
  classify->add_option("--width", o.width, "Target width of the spectral radius enclosure");
  add_out(classify);

  auto* progeny = app.add_subcommand("progeny-law", "Exact P_r(O = n [, A = offdiag])");
  progeny->add_option("--law", o.law, "Law JSON path (mtf.law/1)")->required();
  progeny->add_option("--roots", o.roots, "Root counts r, e.g. 1,0")->required();
  progeny->add_option("--n", o.n, "Total progeny per type, e.g. 1,1")->required();
  progeny->add_option("--offdiag", o.offdiag, "Edge-type counts, rows separated by ';' (omit for the marginal)");
  add_out(progeny);

  auto* simulate = app.add_subcommand("simulate", "Seeded replicas and their event frequency table");
  simulate->add_option("--law", o.law, "Law JSON path (mtf.law/1)")->required();
  simulate->add_option("--roots", o.roots, "Root counts r, e.g. 1,0")->required();
  simulate->add_option("--seed", o.seed, "Random seed")->required();
  simulate->add_option("--replicas", o.replicas, "Number of replicas");
  simulate->add_option("--cap", o.cap, "Vertex cap per replica; larger forests count as truncated");
  simulate->add_option("--exact-max", o.exact_max,
                       "Largest total size for which the exact probability is reported (default 30)");
  simulate->add_option("--jobs", o.jobs, "Worker threads");
  add_out(simulate);

  auto* count = app.add_subcommand("count-forests", "Closed-form forest counts for a signature");
  count->add_option("--formula", o.formula, "plane | indegree | edge-types | injective | labeled-census | "
                                            "unlabeled-census | degrees")
      ->required();
  count->add_option("--sig", o.sig, "Signature JSON path (mtf.signature/1)")->required();
  count->add_flag("--oracle", o.oracle, "Also run the brute-force count");
  add_out(count);

  auto* cyclic = app.add_subcommand("cyclic-count", "Good cyclic shifts versus determinant and elementary sum");
  cyclic->add_option("--coding", o.coding, "Coding JSON path ('-' for stdin)");
  cyclic->add_option("--roots", o.roots, "Root counts r (default: from root_types)");
  add_out(cyclic);

  auto* lagrange = app.add_subcommand("lagrange-coeff", "Lagrange-Good coefficient three ways");
  lagrange->add_option("--law", o.law, "Law JSON path (mtf.law/1)")->required();
  lagrange->add_option("--roots", o.roots, "Root counts r")->required();
  lagrange->add_option("--n", o.n, "Exponent vector n (all entries positive)")->required();
  add_out(lagrange);

  auto* verify = app.add_subcommand("verify", "Run the oracle suite and print a pass/fail table");
  verify->add_option("--cap", o.verify_cap, "Size bound for the exhaustive oracles");
  verify->add_option("--seed", o.seed, "Random seed (default 20240917)");
  verify->add_option("--replicas", o.replicas, "Simulation replicas per law");
  verify->add_option("--walk-steps", o.walk_steps, "Coding-path steps per type for the chi-square test");
  verify->add_option("--jobs", o.jobs, "Worker threads for simulation");
  verify->add_option("--laws", o.laws_dir, "Directory with critical/subcritical/reducible law JSON");
  verify->add_option("--only", o.only, "Comma-separated criteria to run, e.g. 1,2,3");
  add_out(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*encode) return cmd_encode(o);
    if (*decode) return cmd_decode(o);
    if (*classify) return cmd_classify(o);
    if (*progeny) return cmd_progeny_law(o);
    if (*simulate) return cmd_simulate(o);
    if (*count) return cmd_count_forests(o);
    if (*cyclic) return cmd_cyclic_count(o);
    if (*lagrange) return cmd_lagrange(o);
    if (*verify) return cmd_verify(o);
  } catch (const mtf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
