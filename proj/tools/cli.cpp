#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <fstream>
#include <iostream>
#include <sstream>

#include "polytile/criteria.hpp"
#include "polytile/decomp.hpp"
#include "polytile/errors.hpp"
#include "polytile/invariants.hpp"
#include "polytile/io.hpp"
#include "polytile/verify.hpp"

namespace polytile::cli {

namespace {

using io::Json;

class Job {
 public:
  Job(const JobConfig& config, std::ostream& out) : config_(config), out_(out) {}

  int dispatch() {
    const std::string& c = config_.command;
    if (c == "tiles") return tiles();
    if (c == "invariants") return invariants();
    if (c == "equidecomposable") return equidecomposable_cmd();
    if (c == "decompose") return decompose();
    if (c == "represent-zero") return represent_zero();
    if (c == "verify") return verify();
    if (c == "fourier") return fourier();
    if (c == "criteria") return criteria();
    if (c == "plot") return plot();
    throw ParseError("unknown command " + c);
  }

 private:
  io::Document load(std::size_t i) const {
    const std::string& path = config_.inputs.at(i);
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      return io::parse_document(buf.str(), {config_.skip_validation});
    } catch (const Error& e) {
      rethrow_with_path(e, path);
    }
  }

  // Prefix the file name while keeping the exception type.
  [[noreturn]] static void rethrow_with_path(const Error& e, const std::string& path) {
    const std::string msg = path + ": " + e.what();
    if (dynamic_cast<const HypothesisNotMet*>(&e)) throw HypothesisNotMet(msg);
    if (dynamic_cast<const InternalError*>(&e)) throw InternalError(msg);
    throw ParseError(msg);
  }

  GroupElement group(std::size_t i) const { return io::as_group_element(load(i)); }

  Polytope polytope(std::size_t i) const {
    io::Document doc = load(i);
    if (auto* p = std::get_if<Polytope>(&doc)) return std::move(*p);
    throw ParseError(config_.inputs[i] + ": expected a polytope document");
  }

  Lattice lattice(std::size_t i) const {
    io::Document doc = load(i);
    if (auto* l = std::get_if<Lattice>(&doc)) return std::move(*l);
    throw ParseError(config_.inputs[i] + ": expected a lattice document");
  }

  void emit(const Json& j) const { out_ << (config_.pretty ? j.dump(2) : j.dump()) << '\n'; }

  AccumulateOptions accumulate_options() const { return {config_.threads}; }

  int tiles() {
    GroupElement p = group(0);
    Lattice l = lattice(1);
    TilingVerdict v = is_tiling(p, l, accumulate_options());
    emit(io::to_json(v));
    return v.tiles ? kOk : kNegative;
  }

  int invariants() {
    GroupElement p = group(0);
    Lattice l = lattice(1);
    HadwigerReport report = hadwiger_accumulate(p, l, accumulate_options());
    emit({{"dim", report.dim},
          {"lattice", io::to_json(report.lattice)},
          {"all_vanish", report.all_vanish()},
          {"entries", io::to_json(report)}});
    return kOk;
  }

  int equidecomposable_cmd() {
    Polytope a = polytope(0), b = polytope(1);
    Lattice l = lattice(2);
    EquivalenceVerdict v =
        group_equivalence(GroupElement::of(a), GroupElement::of(b), l, accumulate_options());
    Json j = {{"equidecomposable", v.equivalent}, {"volumes_equal", v.volumes_equal}};
    if (v.witness) {
      j["witness"] = io::to_json(*v.witness);
      j["witness_value"] = io::to_json(v.witness_value);
    }
    emit(j);
    return v.equivalent ? kOk : kNegative;
  }

  static Json pieces_json(const std::vector<Piece>& pieces, bool with_coeff) {
    Json arr = Json::array();
    for (const auto& p : pieces) {
      Json j = {{"simplex", io::to_json(p.simplex)}, {"shift", io::to_json(p.shift)}};
      if (with_coeff) j["coeff"] = p.coeff;
      arr.push_back(std::move(j));
    }
    return arr;
  }

  int decompose() {
    Polytope a = polytope(0), b = polytope(1);
    Lattice l = lattice(2);
    DecompositionCertificate cert;
    try {
      cert = equidecompose(a, b, l);
    } catch (const NotEquidecomposable& e) {
      emit({{"equidecomposable", false}, {"reason", e.what()}});
      return kNegative;
    }
    CertificateCheck check = check_certificate(cert, a, b, l, 1000, config_.seed);
    Json j = {{"equidecomposable", true}, {"pieces", pieces_json(cert.pieces, false)}, {"checked", check.ok}};
    if (!check.ok) j["check_failure"] = check.failure;
    emit(j);
    return check.ok ? kOk : kInternalError;
  }

  int represent_zero() {
    GroupElement p = group(0);
    Lattice l = lattice(1);
    std::vector<Piece> moves;
    try {
      moves = represent_zero_tiler(p, l);
    } catch (const NotZeroTiler& e) {
      emit({{"zero_tiler", false}, {"reason", e.what()}});
      return kNegative;
    }
    GroupElement diff = replay(p.dim(), moves) - p;
    const bool ok = canonicalize(diff).empty();
    emit({{"zero_tiler", true}, {"moves", pieces_json(moves, true)}, {"replay_matches", ok}});
    return ok ? kOk : kInternalError;
  }

  int verify() {
    GroupElement p = group(0);
    Lattice l = lattice(1);
    SampleReport r = sample_tiling(p, l, config_.samples, config_.seed, {config_.threads});
    Json levels = Json::object();
    for (const auto& [level, count] : r.observed_levels) levels[std::to_string(level)] = count;
    Json failures = Json::array();
    for (const auto& [x, value] : r.failures) failures.push_back({{"point", io::to_json(x)}, {"value", value}});
    Json j = {{"samples", r.samples},
              {"resampled_boundary", r.resampled_boundary},
              {"observed_levels", std::move(levels)},
              {"constant", r.constant},
              {"failures", std::move(failures)}};
    if (r.level) j["level"] = *r.level;
    emit(j);
    return r.constant ? kOk : kNegative;
  }

  int fourier() {
    GroupElement p = group(0);
    Lattice l = lattice(1);
    Real tol;
    try {
      tol = Real(config_.tol);
    } catch (const std::exception&) {
      throw ParseError("--tol: not a number: " + config_.tol);
    }
    if (!(tol > 0)) throw ParseError("--tol must be positive");
    FourierReport r = fourier_check(p, l, config_.radius, tol, {config_.precision, config_.threads});
    Json j = {{"frequencies_tested", r.frequencies.size()},
              {"max_abs", r.max_abs.str(12, std::ios_base::scientific)},
              {"tol", r.tol.str(12, std::ios_base::scientific)},
              {"pass", r.pass}};
    if (r.argmax) j["argmax"] = io::to_json(*r.argmax);
    emit(j);
    return r.pass ? kOk : kNegative;
  }

  int criteria() {
    Polytope p = polytope(0);
    Lattice l = lattice(1);
    const std::string& m = config_.method;
    CriterionResult r;
    if (m == "1d")
      r = tiles_1d(IntervalSet::of(p), l);
    else if (m == "bolle")
      r = bolle(p, l);
    else if (m == "kol")
      r = kolountzakis(p, l);
    else if (m == "frames3d")
      r = frames_3d(p, l);
    else if (m == "grs")
      r = grs_sufficient(p, l, config_.relaxed);
    else
      throw ParseError("unknown method " + m);
    Json j = {{"method", m}, {"holds", r.holds}, {"failures", r.failures}};
    if (m == "grs") j["relaxed"] = config_.relaxed;
    if (m == "grs" && !r.holds) j["inconclusive"] = true;
    if (r.level) j["level"] = *r.level;
    emit(j);
    return r.holds ? kOk : kNegative;
  }

  int plot();

  const JobConfig& config_;
  std::ostream& out_;
};

// ---------------------------------------------------------------------------

double to_double(const Rational& q) { return q.get_d(); }

int Job::plot() {
  GroupElement p = group(0);
  Lattice l = lattice(1);
  if (p.dim() != 2) throw UnsupportedDimension("plot draws two-dimensional inputs only");
  if (config_.output_path.empty()) throw ParseError("plot needs --out");

  struct Tri {
    std::array<std::pair<double, double>, 3> v;
    std::int64_t coeff;
    bool original;
  };
  std::vector<Tri> tris;
  std::vector<std::pair<double, double>> lattice_points;
  double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
  auto grow = [&](double x, double y) {
    lo_x = std::min(lo_x, x);
    lo_y = std::min(lo_y, y);
    hi_x = std::max(hi_x, x);
    hi_y = std::max(hi_y, y);
  };
  for (int c0 = -1; c0 <= 1; ++c0)
    for (int c1 = -1; c1 <= 1; ++c1) {
      QVector shift = l.point({Rational(c0), Rational(c1)});
      lattice_points.emplace_back(to_double(shift[0]), to_double(shift[1]));
      grow(lattice_points.back().first, lattice_points.back().second);
      for (const auto& t : p.terms()) {
        Tri tri{{}, t.coeff, c0 == 0 && c1 == 0};
        for (std::size_t k = 0; k < 3; ++k) {
          QVector v = t.simplex.vertex(k) + shift;
          tri.v[k] = {to_double(v[0]), to_double(v[1])};
          grow(tri.v[k].first, tri.v[k].second);
        }
        tris.push_back(tri);
      }
    }

  const double size = 640, margin = 20;
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
  const double scale = (size - 2 * margin) / span;
  auto sx = [&](double x) { return margin + (x - lo_x) * scale; };
  auto sy = [&](double y) { return size - margin - (y - lo_y) * scale; };

  std::ofstream svg(config_.output_path);
  if (!svg) throw ParseError(config_.output_path + ": cannot write file");
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& t : tris) {
    if (t.original) continue;
    svg << "<polygon points=\"";
    for (const auto& [x, y] : t.v) svg << sx(x) << ',' << sy(y) << ' ';
    svg << "\" fill=\"" << (t.coeff > 0 ? "#4a7fb5" : "#c0504d") << "\" fill-opacity=\"0.18\" stroke=\"#888\""
        << " stroke-width=\"0.5\"/>\n";
  }
  for (const auto& t : tris) {
    if (!t.original) continue;
    svg << "<polygon points=\"";
    for (const auto& [x, y] : t.v) svg << sx(x) << ',' << sy(y) << ' ';
    svg << "\" fill=\"" << (t.coeff > 0 ? "#4a7fb5" : "#c0504d") << "\" fill-opacity=\"0.55\" stroke=\"black\""
        << " stroke-width=\"1\"/>\n";
  }
  for (const auto& [x, y] : lattice_points)
    svg << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"3\" fill=\"black\"/>\n";
  svg << "</svg>\n";

  emit({{"plot", config_.output_path}, {"translates", 9}});
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  JobConfig config;
  CLI::App app{"Lattice tiling and equidecomposability of polytopes with exact arithmetic", "polytile"};
  app.require_subcommand(1);
  std::string output = "json";
  app.add_option("--output", output, "Report format")->check(CLI::IsMember({"json", "pretty"}));
  app.add_flag("--skip-validation", config.skip_validation, "Do not check that simplices are disjoint");
  app.add_option("--threads", config.threads, "Worker threads")->check(CLI::PositiveNumber);

  auto with_inputs = [&](const std::string& name, const std::string& help, std::vector<std::string> names) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("inputs", config.inputs, "Input files: " + CLI::detail::join(names, " "))
        ->required()
        ->expected(static_cast<int>(names.size()));
    return sub;
  };
  with_inputs("tiles", "Decide whether P tiles by L and at which level", {"P", "L"});
  with_inputs("invariants", "List the nonzero Hadwiger functionals of P", {"P", "L"});
  with_inputs("equidecomposable", "Decide equidecomposability of A and B by L", {"A", "B", "L"});
  CLI::App* decompose = with_inputs("decompose", "Build an explicit equidecomposition of A and B", {"A", "B", "L"});
  decompose->add_option("--seed", config.seed, "Seed for the certificate check");
  with_inputs("represent-zero", "Write a zero tiler as a sum of [S] - [S + l]", {"P", "L"});
  CLI::App* verify = with_inputs("verify", "Check the tiling equation at random points", {"P", "L"});
  verify->add_option("--samples", config.samples, "Number of sample points")->check(CLI::PositiveNumber);
  verify->add_option("--seed", config.seed, "Random seed");
  CLI::App* fourier = with_inputs("fourier", "Check Fourier vanishing on the dual lattice", {"P", "L"});
  fourier->add_option("--radius", config.radius, "Coefficient bound for dual vectors")->check(CLI::PositiveNumber);
  fourier->add_option("--tol", config.tol, "Pass threshold for |FT|");
  fourier->add_option("--precision", config.precision, "Significant decimal digits")->check(CLI::Range(10u, 10000u));
  CLI::App* criteria = with_inputs("criteria", "Apply a dimension-specific criterion", {"P", "L"});
  criteria->add_option("--method", config.method, "Criterion")
      ->required()
      ->check(CLI::IsMember({"1d", "bolle", "kol", "frames3d", "grs"}));
  criteria->add_flag("--relaxed", config.relaxed, "Relaxed vertex condition for grs");
  CLI::App* plot = with_inputs("plot", "Draw P and its lattice translates as SVG (d = 2)", {"P", "L"});
  plot->add_option("--out", config.output_path, "SVG file to write")->required();

  std::vector<std::string> argv_storage{"polytile"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  config.command = app.get_subcommands().front()->get_name();
  config.pretty = output == "pretty";

  try {
    return Job(config, out).dispatch();
  } catch (const HypothesisNotMet& e) {
    err << "hypothesis not met: " << e.what() << '\n';
    return kHypothesisNotMet;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace polytile::cli
