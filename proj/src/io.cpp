#include "msr/io.hpp"

#include <sstream>

#include "msr/errors.hpp"
#include "msr/ground.hpp"

namespace msr {

namespace {

template <typename T>
T require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw DomainError(std::string("field \"") + key + "\" has the wrong type");
  }
}

json ground_to_json(const GroundMatrix& a) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < a.cols(); ++c) row.push_back(a(r, c).value());
    rows.push_back(row);
  }
  return rows;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

}  // namespace

json to_json(const FieldSpec& spec) {
  return {{"q", spec.q}, {"m", spec.degree}, {"modulus", spec.modulus}};
}

FieldSpec field_spec_from_json(const json& j) {
  FieldSpec spec;
  const auto q = require<std::int64_t>(j, "q");
  const auto m = require<std::int64_t>(j, "m");
  if (q < 2 || q > (std::int64_t{1} << 31) || m < 1 || m > 1 << 16) throw DomainError("field q or m out of range");
  spec.q = static_cast<std::uint32_t>(q);
  spec.degree = static_cast<int>(m);
  for (auto c : require<std::vector<std::int64_t>>(j, "modulus")) {
    if (c < 0 || c >= q) throw DomainError("modulus coefficient outside [0, q)");
    spec.modulus.push_back(static_cast<std::uint32_t>(c));
  }
  validate(spec);
  return spec;
}

json element_to_json(const Gf& a) { return a.coords(); }

Gf element_from_json(const json& j, const FieldPtr& field) {
  Poly c;
  try {
    c = j.get<Poly>();
  } catch (const json::exception&) {
    throw DomainError("field element must be a coefficient array");
  }
  if (c.size() > static_cast<std::size_t>(field->degree())) throw DomainError("field element has too many coefficients");
  for (auto v : c) {
    if (v >= field->q()) throw DomainError("field element coefficient outside [0, q)");
  }
  c.resize(field->degree(), 0);
  return field->element(c);
}

json to_json(const ConvolutionalCode& code) {
  json blocks = json::array();
  for (const auto& b : code.blocks()) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < b.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < b.cols(); ++c) row.push_back(element_to_json(b(r, c)));
      rows.push_back(row);
    }
    blocks.push_back(rows);
  }
  return {{"n", code.n()},
          {"k", code.k()},
          {"m", code.m()},
          {"field", to_json(code.field()->spec())},
          {"alpha", element_to_json(code.basis().alpha())},
          {"blocks", blocks}};
}

ConvolutionalCode code_from_json(const json& j) {
  const int n = require<int>(j, "n"), k = require<int>(j, "k"), m = require<int>(j, "m");
  if (n < 1 || k < 1 || m < 0) throw DomainError("code parameters must satisfy n, k >= 1 and m >= 0");
  if (!j.contains("field")) throw DomainError("missing field \"field\"");
  const auto field = ExtensionField::create(field_spec_from_json(j.at("field")));
  if (!j.contains("alpha")) throw DomainError("missing field \"alpha\"");
  const auto basis = std::make_shared<const NormalBasis>(element_from_json(j.at("alpha"), field));
  const json& blocks = j.contains("blocks") ? j.at("blocks") : json();
  if (!blocks.is_array() || static_cast<int>(blocks.size()) != m + 1) throw DomainError("\"blocks\" must hold m + 1 matrices");
  std::vector<ExtMatrix> out;
  for (const auto& b : blocks) {
    if (!b.is_array() || static_cast<int>(b.size()) != k) throw DomainError("each block must have k rows");
    ExtMatrix g(k, n);
    for (int r = 0; r < k; ++r) {
      if (!b[r].is_array() || static_cast<int>(b[r].size()) != n) throw DomainError("each block row must have n entries");
      for (int c = 0; c < n; ++c) g(r, c) = element_from_json(b[r][c], field);
    }
    out.push_back(std::move(g));
  }
  return ConvolutionalCode(std::move(out), basis);
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw DomainError("expected an integer, got \"" + item + "\"");
    }
    if (used != item.size()) throw DomainError("expected an integer, got \"" + item + "\"");
    out.push_back(v);
  }
  return out;
}

FieldSpec parse_field_arg(const std::string& text) {
  // The modulus itself never contains commas, so split at the first two.
  const auto a = text.find(',');
  const auto b = a == std::string::npos ? a : text.find(',', a + 1);
  if (a == std::string::npos) throw DomainError("--field expects q,M[,modulus]");
  const auto head = parse_int_list(text.substr(0, b));
  if (head.size() != 2 || head[0] < 2 || head[1] < 1) throw DomainError("--field expects q,M[,modulus]");
  FieldSpec spec;
  spec.q = static_cast<std::uint32_t>(head[0]);
  spec.degree = head[1];
  if (!is_prime(spec.q)) throw DomainError("q must be prime");
  spec.modulus = b == std::string::npos ? find_sparse_irreducible(spec.q, spec.degree)
                                        : parse_poly(trim(text.substr(b + 1)), spec.q);
  validate(spec);
  return spec;
}

Gf parse_element(const std::string& text, const FieldPtr& field) {
  if (text.find_first_of("Xx") != std::string::npos) {
    Poly p = parse_poly(text, field->q());
    if (p.size() > static_cast<std::size_t>(field->degree())) throw DomainError("element degree must be below M");
    p.resize(field->degree(), 0);
    return field->element(p);
  }
  json coeffs = json::array();
  for (int c : parse_int_list(text)) {
    if (c < 0) throw DomainError("element coefficients must be non-negative");
    coeffs.push_back(c);
  }
  return element_from_json(coeffs, field);
}

json to_json(const DistanceProfile& p) {
  return {{"kind", to_string(p.kind)}, {"values", p.values}, {"exhaustive", p.exhaustive}};
}

json to_json(const MsrVerdict& v, std::uint32_t q, int n) {
  json out = {{"verified", v.verified}, {"determinants", v.determinants}};
  if (v.counterexample) {
    json mats = json::array();
    for (std::size_t t = 0; t < v.counterexample->profile.size(); ++t) {
      const int rho = v.counterexample->profile[t];
      mats.push_back(ground_to_json(enumerate_subspaces(n, rho, q)[v.counterexample->subspaces[t]]));
    }
    out["counterexample"] = {{"profile", v.counterexample->profile},
                             {"subspaces", v.counterexample->subspaces},
                             {"matrices", mats}};
  }
  return out;
}

std::string to_string(SuperRegularity v) {
  switch (v) {
    case SuperRegularity::certified:
      return "certified";
    case SuperRegularity::refuted:
      return "refuted";
    case SuperRegularity::truncated:
      return "truncated";
  }
  return "unknown";
}

json to_json(const SuperRegularityReport& r) {
  json out = {{"verdict", to_string(r.verdict)}, {"max_minor", r.max_minor}};
  if (r.witness) out["witness"] = {{"rows", r.witness->rows}, {"cols", r.witness->cols}};
  return out;
}

json to_json(const SimReport& r) {
  json packets = json::array();
  for (const auto& p : r.packets) {
    packets.push_back({{"t", p.t},
                       {"outcome", p.recovered ? "recovered" : "lost"},
                       {"delay", p.recovered ? json(p.delay) : json(nullptr)},
                       {"decided_at", p.decided_at >= 0 ? json(p.decided_at) : json(nullptr)},
                       {"window_rank", p.window_rank}});
  }
  return {{"trials", r.trials},
          {"packets_total", r.packets_total},
          {"losses", r.losses},
          {"loss_rate", r.loss_rate},
          {"max_window_deficiency", r.max_window_deficiency},
          {"decode_failures", r.decode_failures},
          {"mismatches", r.mismatches},
          {"packets", packets}};
}

std::string to_csv(const SimReport& r, int horizon) {
  std::ostringstream out;
  out << "trial,t,outcome,delay,window_rank\n";
  for (std::size_t i = 0; i < r.packets.size(); ++i) {
    const auto& p = r.packets[i];
    out << (horizon > 0 ? static_cast<int>(i) / horizon : 0) << ',' << p.t << ',' << (p.recovered ? "recovered" : "lost")
        << ',';
    if (p.recovered) out << p.delay;
    out << ',' << p.window_rank << '\n';
  }
  return out.str();
}

std::vector<int> pattern_ranks(const json& j, int n) {
  const bool has_rhos = j.is_object() && j.contains("rhos");
  const bool has_def = j.is_object() && j.contains("deficiencies");
  if (has_rhos == has_def) throw DomainError("pattern needs exactly one of \"rhos\" or \"deficiencies\"");
  auto values = require<std::vector<int>>(j, has_rhos ? "rhos" : "deficiencies");
  for (int& v : values) {
    if (v < 0 || v > n) throw DomainError("pattern entries must lie in [0, n]");
    if (has_def) v = n - v;
  }
  return values;
}

}  // namespace msr
