#include "holo/errors.hpp"
#include "holo/granger.hpp"
#include "holo/json_io.hpp"
#include "holo/laurent.hpp"
#include "holo/oracle.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace holo;

namespace {

enum Exit { kOk = 0, kFail = 1, kInvalid = 2, kUnsupported = 3, kAssumption = 4 };

constexpr double kVerifyTol = 1e-7;
constexpr double kCrossvalTol = 1e-6;

struct Flags {
  std::string input;
  double rank_tol = kDefaultPoleRankTol;
  std::string complements = "orthogonal";
  std::optional<std::uint64_t> seed;
  int max_order = 3;
  std::optional<double> radius;
  int nodes = 256;
  std::string expansion;
  std::size_t t = 300;
  std::optional<std::size_t> burnin;
  std::optional<std::size_t> max_ma;
  std::string output;
};

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput:
    case ErrorKind::InsufficientHistory:
    case ErrorKind::NotComplementary:
    case ErrorKind::NotNested:
    case ErrorKind::OutOfRange:
      return kInvalid;
    case ErrorKind::UnsupportedPoleOrder:
    case ErrorKind::IdenticallySingular:
    case ErrorKind::NotSingularAtOne:
    case ErrorKind::WrongOrder:
      return kUnsupported;
    case ErrorKind::AssumptionViolated:
    case ErrorKind::TailNotConverged:
      return kAssumption;
    default:
      return kFail;
  }
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

ComplementPolicy policy_of(const Flags& f) {
  if (f.complements == "orthogonal") return ComplementPolicy::orthogonal();
  return ComplementPolicy::seeded_random(f.seed.value_or(0));
}

Json tolerances(const PoleAnalysis& an) {
  return Json{{"rank_tol", an.rank_tol}, {"s1_threshold", an.s1_threshold}, {"sdag_threshold", an.sdag_threshold}};
}

int pencil_classify(const Flags& f) {
  const TaylorPencil p = parse_pencil_doc(read_json_file(f.input));
  const PoleAnalysis an = analyze_no_throw(p, policy_of(f), f.rank_tol);
  if (an.order >= 3) {
    emit(Json{{"error", "UnsupportedPoleOrder"},
              {"message", "order ≥ 3 or non-invertible pencil"},
              {"dim_K", an.kernel.dim()},
              {"dim_K1", an.kernel1.dim()},
              {"complements_mode", an.policy},
              {"tolerances", tolerances(an)}});
    return kUnsupported;
  }
  Json out{{"order", an.order},
           {"dim", an.dim},
           {"dim_K", an.kernel.dim()},
           {"dim_K1", an.order >= 2 ? an.kernel1.dim() : 0},
           {"dim_R_defect", an.dim - an.range.dim()},
           {"complements_mode", an.policy}};
  if (an.order >= 2) out["dim_R1_defect"] = an.dim - an.range1.dim();
  out["tolerances"] = tolerances(an);
  emit(out);
  return kOk;
}

LaurentExpansion expansion_for(const TaylorPencil& p, const Flags& f, PoleAnalysis& an) {
  an = analyze(p, policy_of(f), f.rank_tol);
  if (an.order == 0) throw Error(ErrorKind::NotSingularAtOne, "no singularity at center");
  return laurent(an, p, f.max_order);
}

int pencil_laurent(const Flags& f) {
  const TaylorPencil p = parse_pencil_doc(read_json_file(f.input));
  PoleAnalysis an;
  const LaurentExpansion e = expansion_for(p, f, an);
  Json out = expansion_to_json(e);
  out["complements_mode"] = an.policy;
  out["tolerances"] = tolerances(an);
  emit(out);
  return kOk;
}

int pencil_verify(const Flags& f) {
  const TaylorPencil p = parse_pencil_doc(read_json_file(f.input));
  PoleAnalysis an;
  std::optional<LaurentExpansion> e;
  if (f.expansion.empty()) {
    e = expansion_for(p, f, an);
  } else {
    e = parse_expansion(read_json_file(f.expansion));
    if (e->dim() != p.dim() || std::abs(e->center() - p.center()) > 0.0) {
      throw Error(ErrorKind::InvalidInput, "expansion does not match the pencil's dimension or center");
    }
  }
  ContourSpec spec = default_contour(p, f.nodes);
  if (f.radius) spec.radius = *f.radius;
  const int m = e->order();
  const int top = e->truncation();
  const auto contour = contour_coefficients(p, spec, -m, top);

  Json deviations = Json::object();
  Json residuals = Json::object();
  double worst_dev = 0.0, worst_res = 0.0;
  for (int k = -m; k <= top; ++k) {
    const double d = (e->coefficient(k) - contour[static_cast<std::size_t>(k + m)]).norm();
    const double r = identity_residual(*e, p, k);
    deviations[std::to_string(k)] = d;
    residuals[std::to_string(k)] = r;
    worst_dev = std::max(worst_dev, d);
    worst_res = std::max(worst_res, r);
  }
  const bool pass = worst_dev <= kVerifyTol && worst_res <= kVerifyTol;
  emit(Json{{"status", pass ? "PASS" : "FAIL"},
            {"m", m},
            {"J", top},
            {"tolerance", kVerifyTol},
            {"contour", {{"center", complex_to_json(spec.center)}, {"radius", spec.radius}, {"nodes", spec.nodes}}},
            {"max_deviation", worst_dev},
            {"max_identity_residual", worst_res},
            {"deviation", deviations},
            {"identity_residual", residuals}});
  return pass ? kOk : kFail;
}

GrangerOptions granger_options(const Flags& f) {
  GrangerOptions o;
  o.policy = policy_of(f);
  o.rank_tol = f.rank_tol;
  o.max_ma = f.max_ma;
  return o;
}

Json skeleton_json(const Representation& r, const GrangerOptions& o) {
  return Json{{"d", r.d},
              {"N_minus1", matrix_to_json(r.n_minus1)},
              {"N_minus2", matrix_to_json(r.n_minus2)},
              {"dim_K", r.dim_kernel},
              {"dim_K1", r.d == 2 ? r.dim_kernel1 : 0},
              {"tolerances", {{"rank_tol", o.rank_tol}, {"unit_tol", o.unit_tol}, {"ma_rel_tol", o.ma_rel_tol}}}};
}

NoiseSpec noise_of(const ModelDoc& doc, const Flags& f) {
  NoiseSpec n = doc.noise.value_or(NoiseSpec{Mat::Identity(doc.model.dim(), doc.model.dim()), 0});
  if (f.seed) n.seed = *f.seed;
  return n;
}

int ar_classify(const Flags& f) {
  const ModelDoc doc = parse_model_doc(read_json_file(f.input));
  const GrangerOptions o = granger_options(f);
  emit(skeleton_json(classify_integration(doc.model, o), o));
  return kOk;
}

int ar_represent(const Flags& f) {
  const ModelDoc doc = parse_model_doc(read_json_file(f.input));
  const GrangerOptions o = granger_options(f);
  const Representation r = represent(doc.model, o);
  Json out = skeleton_json(r, o);
  Json ma = Json::array();
  for (const Mat& m : r.ma) ma.push_back(matrix_to_json(m));
  out["J"] = r.truncation();
  out["tail_bound"] = r.tail_bound;
  out["ma"] = std::move(ma);
  emit(out);
  return kOk;
}

void write_or_emit(const Json& j, const std::string& path) {
  if (path.empty()) {
    emit(j);
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
  out << j.dump() << '\n';
  emit(Json{{"output", path}});
}

int ar_simulate(const Flags& f) {
  const ModelDoc doc = parse_model_doc(read_json_file(f.input));
  const NoiseSpec noise = noise_of(doc, f);
  const std::size_t burnin = f.burnin.value_or(0);
  const SamplePath path = simulate_ar(doc.model, noise, f.t, burnin);
  Json values = Json::array();
  for (const Vec& v : path.values) values.push_back(vector_to_json(v));
  Json eps = Json::array();
  for (const Vec& v : path.innovations) eps.push_back(vector_to_json(v));
  write_or_emit(Json{{"T", path.T},
                     {"burnin", path.burnin},
                     {"seed", noise.seed},
                     {"values", std::move(values)},
                     {"innovations", std::move(eps)}},
                f.output);
  return kOk;
}

int ar_crossval(const Flags& f) {
  const ModelDoc doc = parse_model_doc(read_json_file(f.input));
  const NoiseSpec noise = noise_of(doc, f);
  const GrangerOptions o = granger_options(f);
  const Representation r = represent(doc.model, o);
  const std::size_t burnin = f.burnin.value_or(std::max<std::size_t>(10 * static_cast<std::size_t>(r.truncation()), 1));
  const CrossValidation cv = cross_validate(doc.model, r, noise, f.t, burnin);
  const bool pass = cv.residual <= kCrossvalTol;
  emit(Json{{"status", pass ? "PASS" : "FAIL"},
            {"d", cv.d},
            {"T", f.t},
            {"burnin", burnin},
            {"seed", noise.seed},
            {"residual", cv.residual},
            {"matched_residual", cv.matched_residual},
            {"tolerance", kCrossvalTol},
            {"ma_length", cv.ma_length},
            {"tail_bound", cv.tail_bound},
            {"tau0", vector_to_json(cv.tau0)},
            {"tau1", vector_to_json(cv.tau1)}});
  return pass ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laurent expansions of matrix pencils and Granger-Johansen representations"};
  app.require_subcommand(1);
  Flags f;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("input", f.input, "input JSON document")->required();
    cmd->add_option("--rank-tol", f.rank_tol, "relative tolerance for rank decisions")->check(CLI::PositiveNumber);
    cmd->add_option("--complements", f.complements, "complement policy")
        ->check(CLI::IsMember({"orthogonal", "random"}));
    cmd->add_option("--seed", f.seed, "seed for random complements and noise");
  };

  using Handler = int (*)(const Flags&);
  Handler handler = nullptr;

  auto* pencil = app.add_subcommand("pencil", "operations on a matrix pencil document");
  pencil->require_subcommand(1);
  auto* classify = pencil->add_subcommand("classify", "pole order at the center");
  add_common(classify);
  classify->callback([&] { handler = pencil_classify; });
  auto* laurent_cmd = pencil->add_subcommand("laurent", "Laurent coefficients N_{-m} .. N_J");
  add_common(laurent_cmd);
  laurent_cmd->add_option("--max-order", f.max_order, "truncation index J")->check(CLI::NonNegativeNumber);
  laurent_cmd->callback([&] { handler = pencil_laurent; });
  auto* verify = pencil->add_subcommand("verify", "check an expansion against the contour oracle");
  add_common(verify);
  verify->add_option("--max-order", f.max_order, "truncation index J")->check(CLI::NonNegativeNumber);
  verify->add_option("--radius", f.radius, "contour radius")->check(CLI::PositiveNumber);
  verify->add_option("--nodes", f.nodes, "quadrature nodes")->check(CLI::PositiveNumber);
  verify->add_option("--expansion", f.expansion, "expansion JSON to check instead of computing one");
  verify->callback([&] { handler = pencil_verify; });

  auto* ar = app.add_subcommand("ar", "operations on an autoregressive model document");
  ar->require_subcommand(1);
  auto add_ar = [&](const char* name, const char* help, Handler h) {
    auto* cmd = ar->add_subcommand(name, help);
    add_common(cmd);
    cmd->add_option("--t", f.t, "sample length T");
    cmd->add_option("--burnin", f.burnin, "pre-sample innovations");
    cmd->add_option("--max-ma", f.max_ma, "largest MA index to return");
    cmd->add_option("--output", f.output, "output file");
    cmd->callback([&handler, h] { handler = h; });
  };
  add_ar("classify", "integration order and principal coefficients", ar_classify);
  add_ar("represent", "MA coefficients of the stationary component", ar_represent);
  add_ar("simulate", "simulate the AR recursion", ar_simulate);
  add_ar("crossval", "compare the AR path with the representation path", ar_crossval);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    return handler(f);
  } catch (const Error& e) {
    std::cerr << "holo: " << e.what() << '\n';
    emit(Json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}});
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "holo: " << e.what() << '\n';
    return kFail;
  }
}
