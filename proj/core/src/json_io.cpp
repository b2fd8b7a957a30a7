#include "trl/json_io.hpp"

#include <cmath>
#include <istream>

#include "trl/error.hpp"

namespace trl {

namespace {

template <typename Fn>
auto guarded(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParseError, std::string(what) + ": " + e.what());
  }
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::kParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

Json scalar_to_json(const Scalar& x) {
  switch (x.field().kind()) {
    case FieldKind::kFinite: return x.residue_value();
    case FieldKind::kRational: return rational_to_string(x.rational_value());
    case FieldKind::kRealFloat: return x.real_value();
    case FieldKind::kComplexFloat: {
      const auto z = x.to_complex();
      return Json::array({z.real(), z.imag()});
    }
  }
  return nullptr;
}

Scalar scalar_from_json(const Json& j, const FieldTag& tag) {
  return guarded("scalar", [&] {
    switch (tag.kind()) {
      case FieldKind::kFinite:
        if (!j.is_number_integer()) fail(ErrorCode::kParseError, "finite-field entries must be integers");
        return Scalar::from_int(tag, j.get<long long>());
      case FieldKind::kRational:
        if (j.is_number_integer()) return Scalar::rational(Rational(j.get<long long>()));
        if (!j.is_string()) fail(ErrorCode::kParseError, "rational entries must be \"num/den\" strings");
        return Scalar::rational(parse_rational(j.get<std::string>()));
      case FieldKind::kRealFloat:
        if (!j.is_number()) fail(ErrorCode::kParseError, "float64 entries must be numbers");
        return Scalar::real(j.get<double>());
      case FieldKind::kComplexFloat:
        if (j.is_number()) return Scalar::complex(j.get<double>(), 0.0);
        if (!j.is_array() || j.size() != 2) fail(ErrorCode::kParseError, "complex128 entries must be [re, im]");
        return Scalar::complex(j[0].get<double>(), j[1].get<double>());
    }
    fail(ErrorCode::kInternal, "bad field kind");
  });
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(scalar_to_json(x));
  return out;
}

Vector vector_from_json(const Json& j, const FieldTag& tag) {
  if (!j.is_array()) fail(ErrorCode::kParseError, "vector must be an array");
  Vector out;
  for (const auto& e : j) out.push_back(scalar_from_json(e, tag));
  return out;
}

Json tensor_to_json(const Tensor& t) {
  Json entries = Json::array();
  for (const auto& e : t.entries()) entries.push_back(scalar_to_json(e));
  return {{"order", t.order()}, {"dim", t.dim()}, {"field", t.field().to_string()}, {"entries", entries}};
}

Tensor tensor_from_json(const Json& j) {
  return guarded("tensor", [&] {
    const int order = require(j, "order").get<int>();
    const int dim = require(j, "dim").get<int>();
    const FieldTag tag = FieldTag::parse(require(j, "field").get<std::string>());
    if (order < 1 || dim < 1) fail(ErrorCode::kParseError, "order and dim must be >= 1");
    Tensor t(order, dim, tag);
    if (j.contains("entries")) {
      const auto& e = j.at("entries");
      if (!e.is_array() || e.size() != t.size()) {
        fail(ErrorCode::kParseError, "expected " + std::to_string(t.size()) + " dense entries");
      }
      for (std::size_t i = 0; i < t.size(); ++i) t.set_flat(i, scalar_from_json(e[i], tag));
    }
    if (j.contains("sparse")) {
      for (const auto& item : j.at("sparse")) {
        if (!item.is_array() || static_cast<int>(item.size()) != order + 1) {
          fail(ErrorCode::kParseError, "sparse items are [i1, ..., id, value]");
        }
        std::vector<int> index(order);
        for (int k = 0; k < order; ++k) {
          index[k] = item[k].get<int>() - 1;
          if (index[k] < 0 || index[k] >= dim) fail(ErrorCode::kParseError, "sparse index out of range");
        }
        t.set(index, scalar_from_json(item[order], tag));
      }
    }
    if (!j.contains("entries") && !j.contains("sparse")) fail(ErrorCode::kParseError, "tensor without entries");
    return t;
  });
}

Json parse_json(std::istream& in) {
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParseError, std::string("malformed JSON: ") + e.what());
  }
}

Tensor read_tensor(std::istream& in) { return tensor_from_json(parse_json(in)); }

Json decomposition_to_json(const Decomposition& dec, int order, int dim, const FieldTag& tag) {
  Json terms = Json::array();
  for (const auto& term : dec.terms) {
    Json item{{"coefficient", scalar_to_json(term.coefficient)}};
    if (term.symmetric) {
      item["vector"] = vector_to_json(term.factors.front());
    } else {
      Json factors = Json::array();
      for (const auto& f : term.factors) factors.push_back(vector_to_json(f));
      item["factors"] = factors;
    }
    terms.push_back(item);
  }
  Json out{{"field", tag.to_string()}, {"order", order}, {"dim", dim}, {"symmetric", dec.symmetric}, {"terms", terms}};
  if (dec.certificate) out["certificate"] = certificate_to_json(*dec.certificate);
  return out;
}

DecompositionFile decomposition_from_json(const Json& j) {
  return guarded("decomposition", [&] {
    DecompositionFile out;
    out.field = FieldTag::parse(require(j, "field").get<std::string>());
    out.order = require(j, "order").get<int>();
    out.dim = require(j, "dim").get<int>();
    out.decomposition.symmetric = j.value("symmetric", false);
    for (const auto& item : require(j, "terms")) {
      const Scalar c = item.contains("coefficient") ? scalar_from_json(item.at("coefficient"), out.field)
                                                    : Scalar::one(out.field);
      if (item.contains("vector")) {
        Vector u = vector_from_json(item.at("vector"), out.field);
        if (static_cast<int>(u.size()) != out.dim) fail(ErrorCode::kParseError, "term vector length");
        out.decomposition.terms.push_back(RankOneTerm::power(c, std::move(u), out.order));
      } else {
        std::vector<Vector> factors;
        for (const auto& f : require(item, "factors")) factors.push_back(vector_from_json(f, out.field));
        if (static_cast<int>(factors.size()) != out.order) fail(ErrorCode::kParseError, "term needs d factors");
        for (const auto& f : factors) {
          if (static_cast<int>(f.size()) != out.dim) fail(ErrorCode::kParseError, "factor length");
        }
        out.decomposition.terms.push_back(RankOneTerm::general(c, std::move(factors)));
      }
    }
    if (!out.decomposition.terms.empty()) {
      out.decomposition.symmetric =
          std::all_of(out.decomposition.terms.begin(), out.decomposition.terms.end(),
                      [](const RankOneTerm& t) { return t.symmetric; });
    }
    return out;
  });
}

namespace {

Json krank_to_json(const KruskalRank& k) {
  if (k.minus_infinity) return "-inf";
  return k.value;
}

Json finding_to_json(const RankFinding& f) {
  return {{"value", f.value}, {"method", to_string(f.method)}, {"lower_bound", f.lower_bound}};
}

Json srank_value_to_json(const std::variant<int, NotExpressible>& v) {
  if (std::holds_alternative<int>(v)) return std::get<int>(v);
  return "NotExpressible";
}

Json complex_to_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

Json certificate_to_json(const KruskalCertificate& c) {
  Json out{{"r", c.r},
           {"kranks", Json::array({krank_to_json(c.kranks[0]), krank_to_json(c.kranks[1]), krank_to_json(c.kranks[2])})},
           {"condition_met", c.condition_met},
           {"unique", c.unique}};
  if (c.symmetric_spans) out["symmetric_spans"] = *c.symmetric_spans;
  return out;
}

Json trace_to_json(const CaseTrace& trace) {
  Json out = Json::array();
  for (const auto& step : trace.steps) {
    Json item{{"case", step.label}, {"substitution", nullptr}};
    if (step.substitution) {
      Json rows = Json::array();
      for (int i = 0; i < step.substitution->rows(); ++i) rows.push_back(vector_to_json(step.substitution->row(i)));
      item["substitution"] = rows;
    }
    out.push_back(item);
  }
  return out;
}

Json rank_report_to_json(const RankReport& report) {
  Json out{{"order", report.order},
           {"dim", report.dim},
           {"field", report.field.to_string()},
           {"rank_A", report.rank_A},
           {"rank_A_tolerance_based", report.rank_A_tolerance_based},
           {"rank", nullptr},
           {"srank", nullptr},
           {"brank", nullptr},
           {"certificate", nullptr},
           {"inequality_chain", inequality_chain_holds(report)}};
  if (report.rank) out["rank"] = finding_to_json(*report.rank);
  if (report.srank) {
    out["srank"] = {{"value", srank_value_to_json(report.srank->value)}, {"method", to_string(report.srank->method)}};
  }
  if (report.brank) out["brank"] = finding_to_json(*report.brank);
  if (report.certificate) out["certificate"] = certificate_to_json(*report.certificate);
  Json witnesses = Json::array();
  for (const auto& w : report.witnesses) witnesses.push_back(decomposition_to_json(w, report.order, report.dim, report.field));
  out["witnesses"] = witnesses;
  out["notes"] = report.notes;
  return out;
}

Json census_to_json(const CensusReport& report) {
  Json histogram = Json::array();
  for (const auto& [key, count] : report.histogram) {
    Json item{{"count", count}};
    item["rank"] = key.first < 0 ? Json(nullptr) : Json(key.first);
    item["srank"] = key.second == kNotExpressibleKey ? Json("NotExpressible") : Json(key.second);
    histogram.push_back(item);
  }
  return {{"field", report.field.to_string()},
          {"d", report.d},
          {"n", report.n},
          {"total", report.total_symmetric},
          {"expressible_nonzero", report.expressible_nonzero},
          {"not_expressible", report.not_expressible},
          {"ranks_computed", report.ranks_computed},
          {"histogram", histogram}};
}

Json sweep_to_json(const SweepReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    Json item{{"tensor", tensor_to_json(v.tensor)}, {"rank_A", v.rank_A}, {"detail", v.detail}};
    item["rank"] = v.rank ? Json(*v.rank) : Json(nullptr);
    item["srank"] = v.srank ? srank_value_to_json(v.srank->value) : Json(nullptr);
    Json witnesses = Json::array();
    for (const auto& w : v.witnesses) {
      witnesses.push_back(decomposition_to_json(w, v.tensor.order(), v.tensor.dim(), v.tensor.field()));
    }
    item["witnesses"] = witnesses;
    violations.push_back(item);
  }
  return {{"theorem", to_string(report.theorem)},
          {"field", report.field.to_string()},
          {"d", report.d},
          {"n", report.n},
          {"exhaustive", report.exhaustive},
          {"seed", report.seed},
          {"precondition_met", report.precondition_met},
          {"precondition_note", report.precondition_note},
          {"instances", report.instances},
          {"hypothesis_met", report.hypothesis_met},
          {"conclusion_held", report.conclusion_held},
          {"chain_violations", report.chain_violations},
          {"violation_count", report.violations.size()},
          {"violations", violations}};
}

Json pencil_to_json(const PencilVerdict& verdict) {
  Json eig = Json::array();
  for (const auto& z : verdict.eigenvalues) eig.push_back(complex_to_json(z));
  return {{"rank_le_2", verdict.rank_le_2},
          {"diagonalizable", verdict.rank_le_2},
          {"slice_mix", Json::array({verdict.alpha, verdict.beta})},
          {"eigenvalues", eig},
          {"algebraic_multiplicity", verdict.algebraic_multiplicity},
          {"geometric_multiplicity", verdict.geometric_multiplicity}};
}

Json border_form_to_json(const BorderForm& form) {
  return {{"field", form.a.field().to_string()},
          {"order", form.order},
          {"x", vector_to_json(form.x)},
          {"y", vector_to_json(form.y)},
          {"a", scalar_to_json(form.a)},
          {"b", scalar_to_json(form.b)}};
}

BorderForm border_form_from_json(const Json& j) {
  return guarded("border form", [&] {
    const FieldTag tag = FieldTag::parse(require(j, "field").get<std::string>());
    BorderForm form{vector_from_json(require(j, "x"), tag), vector_from_json(require(j, "y"), tag),
                    scalar_from_json(require(j, "a"), tag), scalar_from_json(require(j, "b"), tag),
                    require(j, "order").get<int>()};
    if (form.x.size() != form.y.size() || form.x.empty()) fail(ErrorCode::kParseError, "x and y lengths differ");
    return form;
  });
}

Json sym_rank1_to_json(const SymRankOne& r, bool trajectories) {
  Json starts = Json::array();
  for (const auto& s : r.starts) {
    Json item{{"start", s.index}, {"iterations", s.iterations}, {"converged", s.converged}, {"objective", s.objective}};
    if (trajectories) item["trajectory"] = s.trajectory;
    starts.push_back(item);
  }
  return {{"sigma", scalar_to_json(r.sigma)},
          {"u", vector_to_json(r.u)},
          {"residual", r.residual},
          {"best_start", r.best_start},
          {"starts", starts}};
}

Json banach_to_json(const BanachReport& r) {
  return {{"symmetric_residual", r.symmetric_residual},
          {"unconstrained_residual", r.unconstrained_residual},
          {"difference", r.difference},
          {"holds", r.holds},
          {"unconstrained_converged", r.unconstrained.converged}};
}

}  // namespace trl
