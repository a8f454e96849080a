// Command-line front end: every identity check as a subcommand with
// deterministic JSON output.
//
// Exit codes: 0 all checks pass, 1 a checked identity is falsified (the
// report carries a concrete witness), 2 usage or configuration error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "liecoh/catalog.hpp"
#include "liecoh/cohomology.hpp"
#include "liecoh/ghost.hpp"
#include "liecoh/invariants.hpp"
#include "liecoh/lie_algebra.hpp"
#include "liecoh/multibracket.hpp"
#include "liecoh/multivector.hpp"
#include "liecoh/serialize.hpp"

namespace {

using namespace liecoh;

constexpr const char* kVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Common options and plumbing
// ---------------------------------------------------------------------------

struct CommonOpts {
  std::string format = "json";
  std::string output = "-";
  std::string mutate;
  int threads = 0;
  bool timings = false;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  cmd->add_option("--output", c.output, "output path ('-' = stdout)")
      ->capture_default_str();
  cmd->add_option("--mutate", c.mutate,
                  "fault injection: C:i,j,k:DELTA perturbs a structure "
                  "constant, omega:i1,...,ik:DELTA perturbs a tensor "
                  "component (DELTA is a rational like +1 or -2/3)");
  cmd->add_option("--threads", c.threads, "worker thread bound (sets LIECOH_THREADS)");
  cmd->add_flag("--timings", c.timings, "include wall-clock timings (non-deterministic)");
}

struct Mutation {
  std::string target; // "C" or "omega"
  std::vector<int> idx;
  Scalar delta;
};

Rational parse_signed_rational(const std::string& s) {
  if (s.empty()) throw CheckFailure("bad-flag", "empty mutation delta");
  std::string body = s;
  bool negative = false;
  if (body[0] == '+' || body[0] == '-') {
    negative = body[0] == '-';
    body = body.substr(1);
  }
  Rational r = Scalar::parse_rational(body);
  return negative ? -r : r;
}

std::optional<Mutation> parse_mutation(const std::string& spec) {
  if (spec.empty()) return std::nullopt;
  // TARGET:i1,...,ik:DELTA
  const auto first = spec.find(':');
  const auto last = spec.rfind(':');
  if (first == std::string::npos || last == first)
    throw CheckFailure("bad-flag", "--mutate expects TARGET:INDICES:DELTA, got '" + spec + "'");
  Mutation m;
  m.target = spec.substr(0, first);
  if (m.target != "C" && m.target != "omega")
    throw CheckFailure("bad-flag", "--mutate target must be C or omega, got '" + m.target + "'");
  std::stringstream idx(spec.substr(first + 1, last - first - 1));
  std::string tok;
  while (std::getline(idx, tok, ',')) {
    if (tok.empty()) throw CheckFailure("bad-flag", "--mutate has an empty index");
    m.idx.push_back(std::stoi(tok));
  }
  if (m.idx.empty()) throw CheckFailure("bad-flag", "--mutate lists no indices");
  m.delta = Scalar(parse_signed_rational(spec.substr(last + 1)));
  return m;
}

void apply_tensor_mutation(AltTensor& t, const Mutation& m) {
  if (static_cast<int>(m.idx.size()) != t.degree())
    throw CheckFailure("bad-flag", "--mutate omega index count " +
                                       std::to_string(m.idx.size()) +
                                       " does not match tensor degree " +
                                       std::to_string(t.degree()));
  t.add(m.idx, m.delta);
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// ---------------------------------------------------------------------------
// JSON rendering helpers
// ---------------------------------------------------------------------------

json index_json(const Index& idx) {
  json a = json::array();
  for (int i : idx) a.push_back(i);
  return a;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

json witness_json(const Index& idx, const std::string& value) {
  json w;
  w["index"] = index_json(idx);
  w["value"] = value;
  return w;
}

void render_text(const json& j, std::ostream& os, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      os << pad << key << ":\n";
      render_text(value, os, depth + 1);
    } else if (value.is_array() && !value.empty() && value[0].is_object()) {
      os << pad << key << ":\n";
      for (const auto& e : value) {
        os << pad << "  -\n";
        render_text(e, os, depth + 2);
      }
    } else {
      os << pad << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
         << "\n";
    }
  }
}

/// One report per invocation: a fixed envelope around subcommand fields,
/// rendered deterministically (timings only on request).
class Report {
 public:
  Report(const std::string& command, const CommonOpts& opts) : opts_(opts) {
    body_["schema"] = 1;
    body_["tool"] = "liecoh";
    body_["version"] = kVersion;
    body_["command"] = command;
    body_["config"] = json::object();
  }

  json& config() { return body_["config"]; }
  void set(const std::string& key, json value) { body_[key] = std::move(value); }
  void fail() { failed_ = true; }
  bool failed() const { return failed_; }
  void provenance(const std::string& p) { provenance_ = p; }
  void timing(const std::string& phase, std::int64_t ms) { timings_[phase] = ms; }

  int emit() {
    body_["provenance"] = provenance_;
    body_["status"] = failed_ ? "fail" : "pass";
    if (opts_.timings) body_["timings_ms"] = timings_;
    std::ostringstream os;
    if (opts_.format == "json") {
      os << body_.dump(2) << "\n";
    } else {
      render_text(body_, os, 0);
    }
    if (opts_.output == "-") {
      std::cout << os.str();
    } else {
      std::ofstream f(opts_.output);
      if (!f) throw CheckFailure("bad-flag", "cannot open output path " + opts_.output);
      f << os.str();
    }
    return failed_ ? 1 : 0;
  }

 private:
  CommonOpts opts_;
  json body_;
  json timings_ = json::object();
  std::string provenance_ = "exact";
  bool failed_ = false;
};

LieAlgebra build_mutated(const std::string& label, const std::optional<Mutation>& m) {
  LieAlgebra g = build_algebra(label);
  if (m && m->target == "C") {
    if (m->idx.size() != 3)
      throw CheckFailure("bad-flag", "--mutate C expects exactly three indices i,j,k");
    g.mutate_structure(m->idx[0], m->idx[1], m->idx[2], m->delta);
  }
  return g;
}

Representation make_rep(const LieAlgebra& g, const std::string& kind) {
  if (kind == "trivial") return Representation::trivial(g);
  if (kind == "defining") return Representation::defining(g);
  if (kind == "adjoint") return Representation::adjoint(g);
  throw CheckFailure("bad-flag", "unknown coefficient choice: " + kind);
}

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------

json catalog_entry_json(const CatalogEntry& e) {
  json j;
  j["label"] = e.label;
  j["series"] = std::string(1, e.series);
  j["rank"] = e.rank;
  j["dim"] = e.dim;
  j["invariant_orders"] = e.invariant_orders;
  j["cocycle_orders"] = e.cocycle_degrees;
  j["poincare_polynomial"] = poincare_polynomial(e);
  j["constructible"] = e.constructible;
  return j;
}

int run_catalog(const std::vector<std::string>& labels, const CommonOpts& opts) {
  Report rep("catalog", opts);
  rep.config()["labels"] = labels;
  if (labels.size() == 1) {
    json e = catalog_entry_json(catalog(labels[0]));
    for (auto& [k, v] : e.items()) rep.set(k, v);
  } else {
    json rows = json::array();
    if (labels.empty()) {
      for (const auto& e : catalog_all()) rows.push_back(catalog_entry_json(e));
    } else {
      for (const auto& l : labels) rows.push_back(catalog_entry_json(catalog(l)));
    }
    rep.set("entries", std::move(rows));
  }
  return rep.emit();
}

// ---------------------------------------------------------------------------
// algebra
// ---------------------------------------------------------------------------

int run_algebra(const std::string& label, bool dump, const CommonOpts& opts) {
  Report rep("algebra", opts);
  rep.config()["algebra"] = label;
  rep.config()["mutate"] = opts.mutate;
  Stopwatch sw;
  auto mutation = parse_mutation(opts.mutate);
  if (mutation && mutation->target == "omega")
    throw CheckFailure("bad-flag", "algebra: only C mutations apply here");
  LieAlgebra g = build_mutated(label, mutation);
  rep.set("algebra", g.name());
  rep.set("dim", g.dim());
  rep.set("matrix_size", g.matrix_size());

  if (g.has_generators()) {
    if (auto w = g.closure_witness()) {
      Matrix r = g.bracket(w->first, w->second);
      for (const auto& [k, v] : g.bracket_coeffs(w->first, w->second))
        r -= v * g.generators()[static_cast<std::size_t>(k)];
      Scalar bad;
      Index where;
      for (int a = 0; a < r.rows() && where.empty(); ++a)
        for (int b = 0; b < r.cols(); ++b)
          if (!r.at(a, b).is_zero()) {
            bad = r.at(a, b);
            where = {w->first, w->second, a, b};
            break;
          }
      rep.set("closure_residual", bad.str());
      rep.set("closure_witness", witness_json(where, bad.str()));
      rep.fail();
    } else {
      rep.set("closure_residual", "0");
    }
  } else {
    rep.set("closure_residual", "n/a (abstract algebra)");
  }

  if (auto w = g.jacobi_witness()) {
    const auto [i, j, k, s] = *w;
    Scalar acc;
    for (const auto& [r, v] : g.bracket_coeffs(i, j)) acc += v * g.c(r, k, s);
    for (const auto& [r, v] : g.bracket_coeffs(j, k)) acc += v * g.c(r, i, s);
    for (const auto& [r, v] : g.bracket_coeffs(k, i)) acc += v * g.c(r, j, s);
    rep.set("jacobi_residual", acc.str());
    rep.set("jacobi_witness", witness_json({i, j, k, s}, acc.str()));
    rep.fail();
  } else {
    rep.set("jacobi_residual", "0");
  }

  if (dump) {
    json gens = json::array();
    for (const auto& m : g.generators()) gens.push_back(matrix_json(m));
    rep.set("generators", std::move(gens));
    json triplets = json::array();
    for (int i = 0; i < g.dim(); ++i)
      for (int j = i + 1; j < g.dim(); ++j)
        for (const auto& [k, v] : g.bracket_coeffs(i, j)) {
          json t;
          t["i"] = i;
          t["j"] = j;
          t["k"] = k;
          t["value"] = v.str();
          triplets.push_back(std::move(t));
        }
    rep.set("structure_constants", std::move(triplets));
    rep.set("trace_form", matrix_json(g.trace_form()));
    rep.set("killing_form", matrix_json(g.killing_form()));
  }
  rep.timing("total", sw.ms());
  return rep.emit();
}

// ---------------------------------------------------------------------------
// invariants
// ---------------------------------------------------------------------------

int run_invariants(const std::string& label, int order, const std::string& check,
                   bool dump, const CommonOpts& opts) {
  Report rep("invariants", opts);
  rep.config()["algebra"] = label;
  rep.config()["order"] = order;
  rep.config()["check"] = check;
  rep.config()["mutate"] = opts.mutate;
  Stopwatch sw;
  auto mutation = parse_mutation(opts.mutate);
  LieAlgebra g = build_mutated(label, mutation);
  InvariantPolynomial k = symmetrized_trace(g, order);
  if (mutation && mutation->target == "omega") {
    if (static_cast<int>(mutation->idx.size()) != order)
      throw CheckFailure("bad-flag", "--mutate omega index count must equal the order");
    Index idx = mutation->idx;
    std::sort(idx.begin(), idx.end());
    k.tensor.add(idx, mutation->delta);
  }
  rep.set("algebra", g.name());
  rep.set("order", order);
  rep.set("entries", static_cast<std::int64_t>(k.tensor.entries().size()));

  InvarianceReport inv = check_invariance(g, k.tensor);
  if (inv.invariant) {
    rep.set("invariance_residual", "0");
  } else {
    rep.set("invariance_residual", inv.residual.str());
    json w = witness_json(inv.where, inv.residual.str());
    w["acting_index"] = inv.rho;
    rep.set("invariance_witness", std::move(w));
    rep.fail();
  }

  if (check == "primitivity") {
    PrimitivityReport pr = is_primitive(k, lower_invariants(g, order));
    rep.set("primitive", pr.primitive);
    if (!pr.primitive && !pr.decomposition.empty()) {
      json d = json::array();
      for (const auto& [a, b, c] : pr.decomposition) {
        json e;
        e["orders"] = std::vector<int>{a, b};
        e["coefficient"] = c.str();
        d.push_back(std::move(e));
      }
      rep.set("decomposition", std::move(d));
    }
  }
  if (dump) rep.set("tensor", to_json(k.tensor));
  rep.timing("total", sw.ms());
  return rep.emit();
}

// ---------------------------------------------------------------------------
// cocycle
// ---------------------------------------------------------------------------

InvariantPolynomial cocycle_source(const LieAlgebra& g, int order,
                                   const std::string& source) {
  if (source == "trace") return symmetrized_trace(g, order);
  if (source.rfind("product:", 0) == 0) {
    std::stringstream ss(source.substr(8));
    std::string tok;
    std::vector<int> parts;
    while (std::getline(ss, tok, ',')) parts.push_back(std::stoi(tok));
    if (parts.size() != 2)
      throw CheckFailure("bad-flag", "--source product expects two orders a,b");
    InvariantPolynomial a = symmetrized_trace(g, parts[0]);
    InvariantPolynomial b = symmetrized_trace(g, parts[1]);
    InvariantPolynomial out;
    out.algebra = g.name();
    out.order = parts[0] + parts[1];
    out.tensor = sym_product(a.tensor, b.tensor);
    if (out.order != order)
      throw CheckFailure("bad-flag", "--order must equal the sum of the product orders");
    return out;
  }
  throw CheckFailure("bad-flag", "unknown cocycle source: " + source);
}

int run_cocycle(const std::string& label, int order, const std::string& source,
                bool dump, const CommonOpts& opts) {
  Report rep("cocycle", opts);
  rep.config()["algebra"] = label;
  rep.config()["order"] = order;
  rep.config()["source"] = source;
  rep.config()["mutate"] = opts.mutate;
  Stopwatch sw;
  auto mutation = parse_mutation(opts.mutate);
  LieAlgebra g = build_mutated(label, mutation);
  InvariantPolynomial k = cocycle_source(g, order, source);
  AltTensor omega = cocycle_from_polynomial(g, k);
  if (mutation && mutation->target == "omega") apply_tensor_mutation(omega, *mutation);

  rep.set("algebra", g.name());
  rep.set("order", order);
  rep.set("cocycle_degree", 2 * order - 1);
  rep.set("entries", static_cast<std::int64_t>(omega.entries().size()));
  rep.set("zero", omega.is_zero());
  if (omega.is_zero())
    rep.set("note", "the polynomial is not primitive: the construction "
                    "collapses to the zero cocycle");

  AltTensor s = coboundary(g, omega);
  if (s.is_zero()) {
    rep.set("s_omega", "0");
  } else {
    const auto& [idx, v] = *s.entries().begin();
    rep.set("s_omega", v.str());
    rep.set("s_omega_witness", witness_json(idx, v.str()));
    rep.fail();
  }
  if (dump) rep.set("cocycle", to_json(omega));
  rep.timing("total", sw.ms());
  return rep.emit();
}

// ---------------------------------------------------------------------------
// cohomology
// ---------------------------------------------------------------------------

std::vector<int> parse_subalgebra(const std::string& relative) {
  // comma-separated generator indices; plain integers are 0-based, an
  // X-prefixed label is 1-based (X3 = index 2)
  std::vector<int> h;
  std::stringstream ss(relative);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    if (tok[0] == 'X' || tok[0] == 'x')
      h.push_back(std::stoi(tok.substr(1)) - 1);
    else
      h.push_back(std::stoi(tok));
  }
  if (h.empty()) throw CheckFailure("bad-flag", "--relative lists no generators");
  return h;
}

json rows_json(const CohomologyReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json j;
    j["degree"] = row.degree;
    j["cochain_dim"] = row.cochain_dim;
    j["rank"] = row.rank_s;
    j["cocycles"] = row.cocycles;
    j["coboundaries"] = row.coboundaries;
    j["betti"] = row.betti;
    j["method"] = row.method;
    rows.push_back(std::move(j));
  }
  return rows;
}

/// s applied twice to every basis cochain of each degree; with unmutated
/// structure constants this is the complex property and must vanish exactly.
std::optional<std::pair<Index, Scalar>> square_witness(const LieAlgebra& g,
                                                       const Representation& rho,
                                                       int max_degree) {
  const int n = g.dim();
  for (int q = 0; q <= std::min(max_degree, n - 2); ++q) {
    std::vector<Index> tuples;
    for_each_combination(n, q, [&](const Index& K) { tuples.push_back(K); });
    for (const Index& K : tuples)
      for (int c = 0; c < rho.vdim; ++c) {
        Cochain w(q, n, rho.vdim);
        if (q == 0)
          w.comp[static_cast<std::size_t>(c)].add({}, Scalar(1));
        else
          w.comp[static_cast<std::size_t>(c)].set(K, Scalar(1));
        Cochain ss = coboundary(g, rho, coboundary(g, rho, w));
        if (ss.is_zero()) continue;
        for (int b = 0; b < rho.vdim; ++b)
          if (!ss.comp[static_cast<std::size_t>(b)].is_zero()) {
            const auto& [idx, v] = *ss.comp[static_cast<std::size_t>(b)].entries().begin();
            Index where = idx;
            where.push_back(b);
            return std::make_pair(where, v);
          }
      }
  }
  return std::nullopt;
}

int run_cohomology(const std::string& label, const std::string& coefficients,
                   int max_degree, const std::string& relative, bool whitehead,
                   bool modular, const CommonOpts& opts) {
  Report rep("cohomology", opts);
  rep.config()["algebra"] = label;
  rep.config()["coefficients"] = coefficients;
  rep.config()["max_degree"] = max_degree;
  rep.config()["relative"] = relative;
  rep.config()["modular_fallback"] = modular;
  rep.config()["mutate"] = opts.mutate;
  Stopwatch sw;
  auto mutation = parse_mutation(opts.mutate);
  if (mutation && mutation->target == "omega")
    throw CheckFailure("bad-flag", "cohomology: only C mutations apply here");
  LieAlgebra g = build_mutated(label, mutation);
  if (max_degree < 0) max_degree = g.dim();
  CohomologyOptions copts;
  copts.allow_modular = modular;

  rep.set("algebra", g.name());
  rep.set("max_degree", max_degree);

  if (!relative.empty()) {
    if (coefficients != "trivial")
      throw CheckFailure("bad-flag", "relative mode supports trivial coefficients only");
    std::vector<int> h = parse_subalgebra(relative);
    rep.set("relative", h);
    CohomologyReport r = relative_cohomology(g, h, max_degree, copts);
    rep.set("coefficients", "trivial (relative)");
    rep.set("betti", r.betti());
    rep.set("rows", rows_json(r));
    if (r.used_modular()) rep.provenance("modular probabilistic");
    rep.timing("total", sw.ms());
    return rep.emit();
  }

  Representation rho = make_rep(g, coefficients);

  Stopwatch sq;
  if (auto w = square_witness(g, rho, max_degree)) {
    rep.set("complex_closed", w->second.str());
    rep.set("complex_witness", witness_json(w->first, w->second.str()));
    rep.fail();
  } else {
    rep.set("complex_closed", "0");
  }
  rep.timing("square_check", sq.ms());

  if (!rep.failed()) {
    CohomologyReport r = cohomology(g, rho, max_degree, copts);
    rep.set("coefficients", r.coefficients);
    rep.set("betti", r.betti());
    rep.set("rows", rows_json(r));
    if (r.used_modular()) rep.provenance("modular probabilistic");
  }

  if (whitehead) {
    WhiteheadReport w = whitehead_homotopy_check(g, rho, max_degree);
    json wj;
    wj["holds"] = w.holds;
    wj["scalar_casimir"] = w.scalar_casimir;
    wj["casimir"] = w.casimir.str();
    rep.set("whitehead", std::move(wj));
    if (!w.holds) rep.fail();
  }
  rep.timing("total", sw.ms());
  return rep.emit();
}

// ---------------------------------------------------------------------------
// multibracket
// ---------------------------------------------------------------------------

int run_multibracket(const std::string& label, int order, int parity_order,
                     const std::string& verify, const CommonOpts& opts) {
  Report rep("multibracket", opts);
  rep.config()["algebra"] = label;
  rep.config()["order"] = order;
  rep.config()["parity"] = parity_order;
  rep.config()["verify"] = verify;
  rep.config()["mutate"] = opts.mutate;
  Stopwatch sw;
  auto mutation = parse_mutation(opts.mutate);
  LieAlgebra g = build_mutated(label, mutation);
  rep.set("algebra", g.name());

  if (order > 0) {
    if (order % 2 != 0 || order < 2)
      throw CheckFailure("degree-range",
                         "bracket order must be even and >= 2; odd-order "
                         "products do not close on the algebra");
    MultiBracketAlgebra mba = extract_structure(g, order);
    if (mutation && mutation->target == "omega")
      apply_tensor_mutation(mba.structure, *mutation);
    rep.set("order", order);
    rep.set("structure_entries",
            static_cast<std::int64_t>(mba.structure.entries().size()));
    const bool empty = mba.structure.is_zero();
    rep.set("empty", empty);
    if (order + 1 > g.dim()) {
      rep.set("note", "empty structure: bracket degree " + std::to_string(order + 1) +
                          " exceeds the algebra dimension " + std::to_string(g.dim()));
    } else {
      Scalar ratio = structure_cocycle_ratio(g, mba);
      rep.set("scalar_vs_cocycle", ratio.str());
    }

    if (verify == "gji" || verify == "all") {
      Stopwatch gw;
      GjiReport self = gji_check(g, mba.structure, mba.structure);
      if (self.zero) {
        rep.set("gji_residual", "0");
      } else {
        const Scalar v = self.residual.comp[static_cast<std::size_t>(self.witness.back())]
                             .component(Index(self.witness.begin(), self.witness.end() - 1));
        rep.set("gji_residual", "nonzero");
        rep.set("gji_witness", witness_json(self.witness, v.str()));
        rep.fail();
      }
      rep.timing("gji_self", gw.ms());
      if (order > 2) {
        AltTensor low = lowered_bracket_form(g);
        GjiReport mixed = gji_check(g, low, mba.structure);
        if (mixed.zero) {
          rep.set("mixed_gji_residual", "0");
        } else {
          const Scalar v =
              mixed.residual.comp[static_cast<std::size_t>(mixed.witness.back())]
                  .component(Index(mixed.witness.begin(), mixed.witness.end() - 1));
          rep.set("mixed_gji_residual", "nonzero");
          rep.set("mixed_gji_witness", witness_json(mixed.witness, v.str()));
          rep.fail();
        }
      }
    }
  }

  if (parity_order > 0) {
    const int need = 2 * parity_order - 1;
    if (!g.has_generators())
      throw CheckFailure("abstract-algebra", "parity check needs matrix generators");
    if (need > g.dim())
      throw CheckFailure("degree-range", "parity check of order " +
                                             std::to_string(parity_order) + " needs " +
                                             std::to_string(need) + " generators");
    std::vector<Matrix> mats(g.generators().begin(), g.generators().begin() + need);
    OddGjiReport odd = odd_gji_witness(mats, parity_order);
    json pj;
    pj["order"] = odd.order;
    pj["factor"] = Scalar::rational_str(odd.factor);
    if (parity_order % 2 == 0) {
      pj["identically_zero"] = odd.even_case_zero;
      if (!odd.even_case_zero) rep.fail();
    } else {
      pj["proportional"] = odd.proportional;
      if (!odd.proportional) rep.fail();
    }
    rep.set("parity", std::move(pj));
  }

  rep.timing("total", sw.ms());
  return rep.emit();
}

// ---------------------------------------------------------------------------
// brst
// ---------------------------------------------------------------------------

int run_brst(const std::string& label, bool complete, const std::string& rep_kind,
             bool verify, const CommonOpts& opts) {
  Report rep("brst", opts);
  rep.config()["algebra"] = label;
  rep.config()["complete"] = complete;
  rep.config()["rep"] = rep_kind;
  rep.config()["verify"] = verify;
  rep.config()["mutate"] = opts.mutate;
  Stopwatch sw;
  auto mutation = parse_mutation(opts.mutate);
  LieAlgebra g = build_mutated(label, mutation);
  rep.set("algebra", g.name());

  if (complete) {
    if (rep_kind != "trivial")
      throw CheckFailure("bad-flag", "--complete acts on scalar ghosts; drop --rep");
    CatalogEntry e = catalog(label);
    std::vector<AltTensor> cocycles;
    cocycles.push_back(lowered_bracket_form(g));
    for (int d : e.cocycle_degrees) {
      if (d <= 3) continue;
      cocycles.push_back(cocycle_from_polynomial(g, symmetrized_trace(g, (d + 1) / 2)));
    }
    if (mutation && mutation->target == "omega")
      apply_tensor_mutation(cocycles.back(), *mutation);
    CompleteBrst cb = complete_brst(g, cocycles);
    rep.set("terms", cb.report.orders);
    rep.set("nilpotent", cb.report.all_zero && cb.report.generator_complete);
    rep.set("anticommutators", "all zero");
    rep.set("monomials", cb.report.monomials);
    rep.timing("total", sw.ms());
    return rep.emit();
  }

  Representation rho = make_rep(g, rep_kind);
  GhostOperator op = rho.is_trivial() ? brst_trivial(g) : brst_rho(g, rho);
  rep.set("rep", rep_kind);
  rep.set("terms", static_cast<std::int64_t>(op.terms.size()));

  if (verify) {
    // generator check first: {s,s} = 2 s^2 is an even derivation, so
    // vanishing on every generator proves vanishing globally; the monomial
    // sweep is a redundant cross-check
    for (int s = 0; s < g.dim(); ++s) {
      GhostElement x(g.dim(), rho.vdim);
      for (int c = 0; c < rho.vdim; ++c) x.add_term({s}, c, Scalar(1));
      GhostElement r = op.apply(op.apply(x));
      if (!r.is_zero()) {
        rep.set("nilpotent", false);
        rep.set("square_witness", witness_json({s}, "nonzero on a generator"));
        rep.fail();
        rep.timing("total", sw.ms());
        return rep.emit();
      }
    }
    const auto batch = detail::monomial_batch(g.dim());
    for (const Index& I : batch) {
      GhostElement x(g.dim(), rho.vdim);
      for (int c = 0; c < rho.vdim; ++c) x.add_term(I, c, Scalar(1));
      GhostElement r = op.apply(op.apply(x));
      if (!r.is_zero()) {
        rep.set("nilpotent", false);
        rep.set("square_witness", witness_json(I, "nonzero on a monomial"));
        rep.fail();
        rep.timing("total", sw.ms());
        return rep.emit();
      }
    }
    rep.set("nilpotent", true);
    rep.set("monomials", static_cast<std::int64_t>(batch.size()));
  }
  rep.timing("total", sw.ms());
  return rep.emit();
}

// ---------------------------------------------------------------------------
// poisson
// ---------------------------------------------------------------------------

Multivector poisson_source(const LieAlgebra& g, const std::string& source,
                           const std::optional<Mutation>& mutation, int& degree_out) {
  if (source == "linear") {
    if (mutation && mutation->target == "omega")
      throw CheckFailure("bad-flag",
                         "--mutate omega needs a cocycle source; use C mutations here");
    degree_out = 2;
    return lie_poisson(g);
  }
  if (source.rfind("cocycle:", 0) == 0) {
    const int d = std::stoi(source.substr(8));
    if (d < 3 || d % 2 == 0)
      throw CheckFailure("bad-flag", "cocycle source degree must be odd and >= 3");
    MultiBracketAlgebra mba = extract_structure(g, d - 1);
    if (mutation && mutation->target == "omega")
      apply_tensor_mutation(mba.structure, *mutation);
    degree_out = d - 1;
    return linear_multivector(BracketTable::from_structure(g, mba.structure));
  }
  throw CheckFailure("bad-flag", "unknown poisson source: " + source);
}

int run_poisson(const std::string& label, const std::string& source,
                const std::string& checks, const CommonOpts& opts) {
  Report rep("poisson", opts);
  rep.config()["algebra"] = label;
  rep.config()["source"] = source;
  rep.config()["check"] = checks;
  rep.config()["mutate"] = opts.mutate;
  Stopwatch sw;
  auto mutation = parse_mutation(opts.mutate);
  LieAlgebra g = build_mutated(label, mutation);

  std::set<std::string> want;
  {
    std::stringstream ss(checks);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok != "gps" && tok != "np" && tok != "fi")
        throw CheckFailure("bad-flag", "--check entries must be gps, np, or fi");
      want.insert(tok);
    }
    if (want.empty()) throw CheckFailure("bad-flag", "--check lists no checks");
  }

  int degree = 0;
  Multivector L = poisson_source(g, source, mutation, degree);
  rep.set("algebra", g.name());
  rep.set("source", source);
  rep.set("degree", degree);
  rep.set("dim", g.dim());

  if (want.count("gps")) {
    Stopwatch t;
    GpsReport r = gps_check(L);
    if (r.zero) {
      rep.set("gps_residual", "0");
    } else {
      rep.set("gps_residual", r.coord_residual.component(r.witness).str());
      rep.set("gps_witness",
              witness_json(r.witness, r.coord_residual.component(r.witness).str()));
      rep.fail();
    }
    rep.timing("gps", t.ms());
  }

  if (want.count("np")) {
    Stopwatch t;
    NpReport r = np_check(L);
    if (r.differential_zero) {
      rep.set("np_differential", "0");
    } else {
      rep.set("np_differential", r.diff_residual.str());
      json w;
      w["left"] = index_json(r.diff_witness_left);
      w["right"] = index_json(r.diff_witness_right);
      w["value"] = r.diff_residual.str();
      rep.set("np_differential_witness", std::move(w));
      rep.fail();
    }
    if (r.algebraic_zero) {
      rep.set("np_algebraic", "0");
      rep.set("np_algebraic_at_sample", "zero");
    } else {
      rep.set("np_algebraic", "nonzero");
      rep.set("np_algebraic_at_sample", r.alg_at_sample.is_zero() ? "zero" : "nonzero");
      json w;
      w["left"] = index_json(r.alg_witness_left);
      w["right"] = index_json(r.alg_witness_right);
      w["residual"] = r.alg_residual.str();
      w["at_sample"] = r.alg_at_sample.str();
      rep.set("np_algebraic_witness", std::move(w));
      rep.fail();
    }
    json sample = json::array();
    for (const auto& s : r.sample) sample.push_back(s.str());
    rep.set("sample", std::move(sample));
    rep.set("decomposable_hint", r.differential_zero && r.algebraic_zero);
    rep.timing("np", t.ms());
  }

  if (want.count("fi")) {
    // deterministic falsification probe: the first degree-1 arguments are
    // fixed coordinates, the second tuple sweeps canonical combinations
    Stopwatch t;
    const int n = degree;
    const int dim = g.dim();
    if (n - 1 > dim)
      throw CheckFailure("degree-range", "fi probe needs degree <= dim+1");
    std::vector<PolyFunction> fs;
    for (int i = 0; i + 1 < n; ++i) fs.push_back(PolyFunction::coordinate(dim, i));
    std::int64_t tried = 0;
    bool found = false;
    json witness;
    for_each_combination(dim, n, [&](const Index& K) {
      if (found || tried >= 128) return;
      ++tried;
      std::vector<PolyFunction> gs;
      for (int i : K) gs.push_back(PolyFunction::coordinate(dim, i));
      PolyFunction r = fi_residual(L, fs, gs);
      if (!r.is_zero()) {
        found = true;
        witness["gs"] = index_json(K);
        witness["residual"] = r.str();
      }
    });
    json fi;
    fi["sampled_tuples"] = tried;
    if (found) {
      fi["residual"] = "nonzero";
      fi["witness"] = std::move(witness);
      rep.fail();
    } else {
      fi["residual"] = "0 (all sampled tuples)";
    }
    rep.set("fundamental_identity", std::move(fi));
    rep.timing("fi", t.ms());
  }

  rep.timing("total", sw.ms());
  return rep.emit();
}

// ---------------------------------------------------------------------------
// error classification
// ---------------------------------------------------------------------------

bool is_falsification(const std::string& code) {
  static const std::set<std::string> codes = {
      "closure-violation", "jacobi-violation", "invariance",   "non-invariant",
      "not-a-cocycle",     "not-antisymmetric", "not-symmetric", "not-proportional",
      "identity-component", "off-span",          "anticommutator", "verdict-mismatch",
      "not-preserved",     "rep-violation"};
  return codes.count(code) > 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact checker for Lie-algebra identities: cohomology, "
               "multibrackets, ghost differentials, Poisson structures"};
  app.require_subcommand(1);

  // catalog
  auto* cat = app.add_subcommand("catalog", "structural data per simple algebra");
  std::vector<std::string> cat_labels;
  cat->add_option("labels", cat_labels, "algebra labels (none = all)");
  CommonOpts cat_opts;
  add_common(cat, cat_opts);

  // algebra
  auto* alg = app.add_subcommand("algebra", "build an algebra and check closure + Jacobi");
  std::string alg_label;
  bool alg_dump = false;
  alg->add_option("--algebra", alg_label, "algebra label")->required();
  alg->add_flag("--dump", alg_dump, "include generators, structure constants, and forms");
  CommonOpts alg_opts;
  add_common(alg, alg_opts);

  // invariants
  auto* inv = app.add_subcommand("invariants", "symmetrized-trace invariant polynomials");
  std::string inv_label, inv_check;
  int inv_order = 0;
  bool inv_dump = false;
  inv->add_option("--algebra", inv_label, "algebra label")->required();
  inv->add_option("--order", inv_order, "polynomial order")->required();
  inv->add_option("--check", inv_check, "extra check: primitivity");
  inv->add_flag("--dump", inv_dump, "include the tensor");
  CommonOpts inv_opts;
  add_common(inv, inv_opts);

  // cocycle
  auto* coc = app.add_subcommand("cocycle", "odd cocycles from invariant polynomials");
  std::string coc_label, coc_source = "trace";
  int coc_order = 0;
  bool coc_dump = false;
  coc->add_option("--algebra", coc_label, "algebra label")->required();
  coc->add_option("--order", coc_order, "polynomial order m (cocycle degree 2m-1)")
      ->required();
  coc->add_option("--source", coc_source, "trace | product:a,b")->capture_default_str();
  coc->add_flag("--dump", coc_dump, "include the cocycle tensor");
  CommonOpts coc_opts;
  add_common(coc, coc_opts);

  // cohomology
  auto* coh = app.add_subcommand("cohomology", "exact Betti numbers per degree");
  std::string coh_label, coh_coeff = "trivial", coh_rel;
  int coh_max = -1;
  bool coh_white = false, coh_modular = false;
  coh->add_option("--algebra", coh_label, "algebra label")->required();
  coh->add_option("--coefficients", coh_coeff, "trivial | defining | adjoint")
      ->capture_default_str();
  coh->add_option("--max-degree", coh_max, "highest degree (default: dim)");
  coh->add_option("--relative", coh_rel,
                  "subalgebra generators for coset cohomology (0-based, or X-prefixed 1-based)");
  coh->add_flag("--whitehead", coh_white, "verify the contracting-homotopy identity");
  coh->add_flag("--modular-fallback", coh_modular,
                "allow probabilistic modular ranks beyond the exact-size guard");
  CommonOpts coh_opts;
  add_common(coh, coh_opts);

  // multibracket
  auto* mb = app.add_subcommand("multibracket", "higher-order bracket structures");
  std::string mb_label, mb_verify;
  int mb_order = 0, mb_parity = 0;
  mb->add_option("--algebra", mb_label, "algebra label")->required();
  mb->add_option("--order", mb_order, "bracket order (even)");
  mb->add_option("--parity", mb_parity,
                 "order for the matrix-level parity dichotomy check");
  mb->add_option("--verify", mb_verify, "gji | all");
  CommonOpts mb_opts;
  add_common(mb, mb_opts);

  // brst
  auto* br = app.add_subcommand("brst", "ghost differentials and their nilpotency");
  std::string br_label, br_rep = "trivial";
  bool br_complete = false, br_verify = false;
  br->add_option("--algebra", br_label, "algebra label")->required();
  br->add_option("--rep", br_rep, "trivial | defining | adjoint")->capture_default_str();
  br->add_flag("--complete", br_complete, "full higher-order tower from the cocycle ladder");
  br->add_flag("--verify", br_verify, "sweep the nilpotency checks");
  CommonOpts br_opts;
  add_common(br, br_opts);

  // poisson
  auto* po = app.add_subcommand("poisson", "linear Poisson structures and their checks");
  std::string po_label, po_source = "linear", po_checks = "gps";
  po->add_option("--algebra", po_label, "algebra label")->required();
  po->add_option("--source", po_source, "linear | cocycle:D")->capture_default_str();
  po->add_option("--check", po_checks, "comma list of gps, np, fi")->capture_default_str();
  CommonOpts po_opts;
  add_common(po, po_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends
      app.exit(e);
      return 0;
    }
    app.exit(e);
    return 2;
  }

  const CommonOpts* active = nullptr;
  if (cat->parsed()) active = &cat_opts;
  if (alg->parsed()) active = &alg_opts;
  if (inv->parsed()) active = &inv_opts;
  if (coc->parsed()) active = &coc_opts;
  if (coh->parsed()) active = &coh_opts;
  if (mb->parsed()) active = &mb_opts;
  if (br->parsed()) active = &br_opts;
  if (po->parsed()) active = &po_opts;
  if (active && active->threads > 0)
    setenv("LIECOH_THREADS", std::to_string(active->threads).c_str(), 1);

  try {
    if (cat->parsed()) return run_catalog(cat_labels, cat_opts);
    if (alg->parsed()) return run_algebra(alg_label, alg_dump, alg_opts);
    if (inv->parsed())
      return run_invariants(inv_label, inv_order, inv_check, inv_dump, inv_opts);
    if (coc->parsed())
      return run_cocycle(coc_label, coc_order, coc_source, coc_dump, coc_opts);
    if (coh->parsed())
      return run_cohomology(coh_label, coh_coeff, coh_max, coh_rel, coh_white,
                            coh_modular, coh_opts);
    if (mb->parsed())
      return run_multibracket(mb_label, mb_order, mb_parity, mb_verify, mb_opts);
    if (br->parsed()) return run_brst(br_label, br_complete, br_rep, br_verify, br_opts);
    if (po->parsed()) return run_poisson(po_label, po_source, po_checks, po_opts);
  } catch (const CheckFailure& e) {
    if (is_falsification(e.code())) {
      json j;
      j["schema"] = 1;
      j["tool"] = "liecoh";
      j["version"] = kVersion;
      j["status"] = "fail";
      j["error"] = e.code();
      j["message"] = e.what();
      if (!e.witness().empty()) j["witness"] = e.witness();
      std::cout << j.dump(2) << "\n";
      return 1;
    }
    std::cerr << "liecoh: " << e.code() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "liecoh: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "liecoh: no subcommand\n";
  return 2;
}
