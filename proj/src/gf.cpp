#include "msr/gf.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

#include "msr/errors.hpp"
#include "msr/integer.hpp"

namespace msr {

namespace {

using u64 = std::uint64_t;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int deg(const Poly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    if (p[i]) return i;
  }
  return -1;
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t q) {
  return static_cast<std::uint32_t>(pow_mod(a, q - 2, q));
}

// Reduces wide modulo a monic f of degree d in place; result has length d.
void reduce_in_place(Poly& wide, const Poly& f, std::uint32_t q, const std::vector<int>& support) {
  const int d = static_cast<int>(f.size()) - 1;
  for (int i = static_cast<int>(wide.size()) - 1; i >= d; --i) {
    const u64 c = wide[i];
    if (!c) continue;
    wide[i] = 0;
    const u64 negc = q - c;
    for (int j : support) {
      wide[i - d + j] = static_cast<std::uint32_t>((wide[i - d + j] + negc * f[j]) % q);
    }
  }
  wide.resize(d, 0);
}

std::vector<int> support_of(const Poly& f) {
  std::vector<int> s;
  for (int j = 0; j + 1 < static_cast<int>(f.size()); ++j) {
    if (f[j]) s.push_back(j);
  }
  return s;
}

Poly poly_mul_raw(const Poly& a, const Poly& b, std::uint32_t q) {
  if (a.empty() || b.empty()) return {};
  std::vector<u64> acc(a.size() + b.size() - 1, 0);
  const u64 limit = UINT64_MAX - static_cast<u64>(q - 1) * (q - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!b[j]) continue;
      u64& slot = acc[i + j];
      slot += static_cast<u64>(a[i]) * b[j];
      if (slot > limit) slot %= q;
    }
  }
  Poly out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<std::uint32_t>(acc[i] % q);
  return out;
}

// Long division over F_q; returns (quotient, remainder), remainder trimmed.
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b, std::uint32_t q) {
  trim(a);
  const int db = deg(b);
  if (db < 0) throw DivisionByZero();
  const std::uint32_t lead_inv = inv_mod(b[db], q);
  Poly quot(std::max(0, deg(a) - db + 1), 0);
  for (int i = deg(a); i >= db; --i) {
    const u64 c = static_cast<u64>(a[i]) * lead_inv % q;
    if (!c) continue;
    quot[i - db] = static_cast<std::uint32_t>(c);
    for (int j = 0; j <= db; ++j) {
      a[i - db + j] = static_cast<std::uint32_t>((a[i - db + j] + (q - c) * b[j]) % q);
    }
  }
  trim(a);
  return {quot, a};
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t q) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = poly_divmod(a, b, q).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// g^q mod f using g(X)^q = g(X^q) over F_q.
Poly frob_mod(const Poly& g, const Poly& f, std::uint32_t q, const std::vector<int>& support) {
  const int d = static_cast<int>(f.size()) - 1;
  Poly wide(static_cast<std::size_t>(q) * std::max(0, d - 1) + 1, 0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i]) wide[i * q] = g[i];
  }
  reduce_in_place(wide, f, q, support);
  return wide;
}

constexpr int kSmallFactorDegree = 16;

std::vector<int> prime_divisors(int n) {
  std::vector<int> out;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_irreducible(std::uint32_t q, const Poly& f_in) {
  Poly f = f_in;
  trim(f);
  const int d = deg(f);
  if (d < 1) return false;
  if (d == 1) return true;
  if (static_cast<u64>(q) * d > (1ull << 26)) {
    throw DomainError("irreducibility test too large for q * M = " + std::to_string(u64(q) * d));
  }
  // Make monic.
  const std::uint32_t lead_inv = inv_mod(f[d], q);
  for (auto& c : f) c = static_cast<std::uint32_t>(static_cast<u64>(c) * lead_inv % q);
  const auto support = support_of(f);

  const auto divisors = prime_divisors(d);
  Poly x(d, 0);
  x[1] = 1;  // d >= 2
  Poly power = x;  // X^{q^i} mod f
  std::vector<Poly> checkpoints(d + 1);
  for (int i = 1; i <= d; ++i) {
    power = frob_mod(power, f, q, support);
    for (int p : divisors) {
      if (i == d / p) checkpoints[i] = power;
    }
    // Cheap rejection: a factor of small degree i divides X^{q^i} - X.
    if (i <= kSmallFactorDegree && 2 * i <= d) {
      Poly h = power;
      h[1] = static_cast<std::uint32_t>((h[1] + q - 1) % q);
      if (deg(poly_gcd(h, f, q)) != 0) return false;
    }
  }
  if (power != x) return false;
  for (int p : divisors) {
    Poly h = checkpoints[d / p];
    h[1] = static_cast<std::uint32_t>((h[1] + q - 1) % q);
    const Poly g = poly_gcd(h, f, q);
    if (deg(g) != 0) return false;
  }
  return true;
}

void validate(const FieldSpec& spec) {
  if (!is_prime(spec.q)) throw DomainError("q = " + std::to_string(spec.q) + " is not prime");
  if (spec.q >= (1u << 31)) throw DomainError("q must be below 2^31");
  if (spec.degree < 1) throw DomainError("extension degree must be at least 1");
  if (static_cast<int>(spec.modulus.size()) != spec.degree + 1) {
    throw DomainError("modulus must have exactly M + 1 coefficients");
  }
  for (auto c : spec.modulus) {
    if (c >= spec.q) throw DomainError("modulus coefficient out of range [0, q)");
  }
  if (spec.modulus.back() != 1) throw DomainError("modulus must be monic");
  if (!is_irreducible(spec.q, spec.modulus)) {
    throw DomainError("modulus " + format_poly(spec.modulus) + " is reducible over F_" + std::to_string(spec.q));
  }
}

Poly find_irreducible(std::uint32_t q, int degree) {
  if (!is_prime(q)) throw DomainError("q is not prime");
  if (degree < 1) throw DomainError("degree must be at least 1");
  Poly f(degree + 1, 0);
  f[degree] = 1;
  // Odometer over the lower coefficients, constant term fastest.
  for (;;) {
    if (degree == 1 || f[0] != 0) {
      if (is_irreducible(q, f)) return f;
    }
    int i = 0;
    while (i < degree && ++f[i] == q) f[i++] = 0;
    if (i == degree) break;
  }
  throw ConstructionError("no irreducible polynomial found");
}

Poly find_sparse_irreducible(std::uint32_t q, int degree) {
  if (degree < 2) return find_irreducible(q, degree);
  Poly f(degree + 1, 0);
  f[degree] = 1;
  f[0] = 1;
  // Swan: over F_2 no trinomial of degree divisible by 8 is irreducible.
  const bool skip_trinomials = q == 2 && degree % 8 == 0;
  for (int a = 1; a < degree && !skip_trinomials; ++a) {
    f[a] = 1;
    if (is_irreducible(q, f)) return f;
    f[a] = 0;
  }
  for (int a = 3; a < degree; ++a) {
    for (int b = 2; b < a; ++b) {
      for (int c = 1; c < b; ++c) {
        f[a] = f[b] = f[c] = 1;
        if (is_irreducible(q, f)) return f;
        f[a] = f[b] = f[c] = 0;
      }
    }
  }
  return find_irreducible(q, degree);
}

Poly parse_poly(const std::string& text, std::uint32_t q) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '*') s.push_back(static_cast<char>(std::tolower(c)));
  }
  if (s.empty()) throw DomainError("empty polynomial");
  Poly out;
  std::size_t i = 0;
  while (i < s.size()) {
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') {
      negative = s[i] == '-';
      ++i;
    }
    u64 coef = 1;
    bool has_coef = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      coef = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) coef = coef * 10 + (s[i++] - '0');
      has_coef = true;
    }
    std::size_t exponent = 0;
    if (i < s.size() && s[i] == 'x') {
      ++i;
      exponent = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) throw DomainError("bad exponent in " + text);
        exponent = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) exponent = exponent * 10 + (s[i++] - '0');
      }
    } else if (!has_coef) {
      throw DomainError("cannot parse polynomial " + text);
    }
    if (i < s.size() && s[i] != '+' && s[i] != '-') throw DomainError("cannot parse polynomial " + text);
    if (out.size() <= exponent) out.resize(exponent + 1, 0);
    const u64 c = coef % q;
    out[exponent] = static_cast<std::uint32_t>((out[exponent] + (negative ? q - c : c)) % q);
  }
  trim(out);
  return out;
}

std::string format_poly(const Poly& p) {
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    if (!p[i]) continue;
    if (!first) os << " + ";
    first = false;
    if (p[i] != 1 || i == 0) os << p[i];
    if (i >= 1) os << 'X';
    if (i >= 2) os << '^' << i;
  }
  if (first) os << '0';
  return os.str();
}

// ---------------------------------------------------------------------------

ExtensionField::ExtensionField(FieldSpec spec) : spec_(std::move(spec)), modulus_support_(support_of(spec_.modulus)) {}

std::shared_ptr<const ExtensionField> ExtensionField::create(FieldSpec spec) {
  validate(spec);
  return std::shared_ptr<const ExtensionField>(new ExtensionField(std::move(spec)));
}

std::optional<std::uint64_t> ExtensionField::size() const { return checked_pow(q(), degree()); }

Gf ExtensionField::zero() const { return Gf(shared_from_this(), Poly(degree(), 0)); }

Gf ExtensionField::one() const { return constant(1); }

Gf ExtensionField::constant(std::int64_t c) const {
  Poly p(degree(), 0);
  const auto m = static_cast<std::int64_t>(q());
  p[0] = static_cast<std::uint32_t>(((c % m) + m) % m);
  return Gf(shared_from_this(), std::move(p));
}

Gf ExtensionField::x() const {
  Poly p{0, 1};
  return element(std::move(p));
}

Gf ExtensionField::element(Poly coords) const {
  for (auto& c : coords) c %= q();
  if (static_cast<int>(coords.size()) > degree()) coords = reduce(std::move(coords));
  coords.resize(degree(), 0);
  return Gf(shared_from_this(), std::move(coords));
}

Gf ExtensionField::from_index(std::uint64_t index) const {
  Poly p(degree(), 0);
  for (int i = 0; i < degree() && index; ++i) {
    p[i] = static_cast<std::uint32_t>(index % q());
    index /= q();
  }
  if (index) throw DomainError("element index out of range");
  return Gf(shared_from_this(), std::move(p));
}

Poly ExtensionField::reduce(Poly wide) const {
  if (static_cast<int>(wide.size()) < degree()) {
    wide.resize(degree(), 0);
    return wide;
  }
  reduce_in_place(wide, spec_.modulus, q(), modulus_support_);
  return wide;
}

Poly ExtensionField::add(const Poly& a, const Poly& b) const {
  Poly r(degree());
  for (int i = 0; i < degree(); ++i) r[i] = static_cast<std::uint32_t>((u64(a[i]) + b[i]) % q());
  return r;
}

Poly ExtensionField::sub(const Poly& a, const Poly& b) const {
  Poly r(degree());
  for (int i = 0; i < degree(); ++i) r[i] = static_cast<std::uint32_t>((u64(a[i]) + q() - b[i]) % q());
  return r;
}

Poly ExtensionField::neg(const Poly& a) const {
  Poly r(degree());
  for (int i = 0; i < degree(); ++i) r[i] = a[i] ? q() - a[i] : 0;
  return r;
}

Poly ExtensionField::scale(const Poly& a, std::uint32_t c) const {
  Poly r(degree());
  for (int i = 0; i < degree(); ++i) r[i] = static_cast<std::uint32_t>(u64(a[i]) * c % q());
  return r;
}

Poly ExtensionField::mul(const Poly& a, const Poly& b) const { return reduce(poly_mul_raw(a, b, q())); }

Poly ExtensionField::inv(const Poly& a) const {
  Poly r0 = spec_.modulus, r1 = a;
  trim(r1);
  if (r1.empty()) throw DivisionByZero();
  Poly t0, t1{1};
  while (deg(r1) > 0) {
    auto [quot, rem] = poly_divmod(r0, r1, q());
    Poly prod = poly_mul_raw(quot, t1, q());
    Poly t2(std::max(t0.size(), prod.size()), 0);
    for (std::size_t i = 0; i < t2.size(); ++i) {
      const u64 x = i < t0.size() ? t0[i] : 0;
      const u64 y = i < prod.size() ? prod[i] : 0;
      t2[i] = static_cast<std::uint32_t>((x + q() - y) % q());
    }
    trim(t2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  // r1 is a non-zero constant because the modulus is irreducible.
  const std::uint32_t c = inv_mod(r1[0], q());
  for (auto& v : t1) v = static_cast<std::uint32_t>(u64(v) * c % q());
  return reduce(std::move(t1));
}

Poly ExtensionField::pow(const Poly& a, std::uint64_t e) const {
  Poly result(degree(), 0);
  result[0] = 1;
  Poly base = a;
  while (e) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return result;
}

Poly ExtensionField::frobenius_step(const Poly& a) const {
  if (static_cast<u64>(q() - 1) * degree() > (1ull << 22)) return pow(a, q());
  if (degree() == 1) return a;
  return frob_mod(a, spec_.modulus, q(), modulus_support_);
}

// ---------------------------------------------------------------------------

namespace {

const FieldPtr& common_field(const Gf& a, const Gf& b) {
  if (a.bound() && b.bound() && a.field() != b.field() && a.field()->spec() != b.field()->spec()) {
    throw FieldMismatch("operands belong to different extension fields");
  }
  return a.bound() ? a.field() : b.field();
}

}  // namespace

Gf::Gf(FieldPtr field, Poly coords) : field_(std::move(field)), coords_(std::move(coords)) {
  if (!field_) throw DomainError("null field");
  if (static_cast<int>(coords_.size()) != field_->degree()) throw DimensionError("coordinate vector must have length M");
  for (auto c : coords_) {
    if (c >= field_->q()) throw DomainError("coordinate out of range [0, q)");
  }
}

const Poly& Gf::coords() const {
  if (!bound()) throw DomainError("unbound literal has no coordinates");
  return coords_;
}

Gf lift(const Gf& a, const FieldPtr& field) {
  if (a.bound()) {
    if (a.field() != field && a.field()->spec() != field->spec()) throw FieldMismatch("cannot lift across fields");
    return a;
  }
  return field->constant(a.literal());
}

Gf embed(const Fq& c, const FieldPtr& field) {
  if (c.bound() && c.modulus() != field->q()) throw FieldMismatch("ground element from a different prime field");
  return field->constant(c.value());
}

Gf operator+(const Gf& a, const Gf& b) {
  const FieldPtr& f = common_field(a, b);
  if (!f) return Gf(static_cast<int>(a.literal_ + b.literal_));
  return Gf(f, f->add(lift(a, f).coords_, lift(b, f).coords_));
}

Gf operator-(const Gf& a, const Gf& b) {
  const FieldPtr& f = common_field(a, b);
  if (!f) return Gf(static_cast<int>(a.literal_ - b.literal_));
  return Gf(f, f->sub(lift(a, f).coords_, lift(b, f).coords_));
}

Gf operator*(const Gf& a, const Gf& b) {
  const FieldPtr& f = common_field(a, b);
  if (!f) return Gf(static_cast<int>(a.literal_ * b.literal_));
  if (!a.bound()) return Gf(f, f->scale(b.coords_, lift(a, f).coords_[0]));
  if (!b.bound()) return Gf(f, f->scale(a.coords_, lift(b, f).coords_[0]));
  return Gf(f, f->mul(a.coords_, b.coords_));
}

Gf operator*(const Gf& a, const Fq& c) {
  if (!a.bound()) {
    if (!c.bound()) return Gf(static_cast<int>(a.literal_ * c.value()));
    return Gf(static_cast<int>(a.literal_ * c.value()));
  }
  if (c.bound() && c.modulus() != a.field_->q()) throw FieldMismatch("ground scalar from a different prime field");
  const auto m = static_cast<std::int64_t>(a.field_->q());
  const auto v = static_cast<std::uint32_t>(((c.value() % m) + m) % m);
  return Gf(a.field_, a.field_->scale(a.coords_, v));
}

Gf operator/(const Gf& a, const Gf& b) { return a * inverse(b); }

Gf Gf::operator-() const {
  if (!bound()) return Gf(static_cast<int>(-literal_));
  return Gf(field_, field_->neg(coords_));
}

bool operator==(const Gf& a, const Gf& b) {
  const FieldPtr& f = common_field(a, b);
  if (!f) return a.literal_ == b.literal_;
  return lift(a, f).coords_ == lift(b, f).coords_;
}

std::ostream& operator<<(std::ostream& os, const Gf& a) { return os << to_string(a); }

bool is_zero(const Gf& a) {
  if (!a.bound()) return a.literal() == 0;
  const auto& c = a.coords();
  return std::all_of(c.begin(), c.end(), [](std::uint32_t v) { return v == 0; });
}

Gf inverse(const Gf& a) {
  if (is_zero(a)) throw DivisionByZero();
  if (!a.bound()) {
    if (a.literal() == 1 || a.literal() == -1) return a;
    throw DomainError("cannot invert an unbound literal other than +-1");
  }
  return Gf(a.field(), a.field()->inv(a.coords()));
}

Gf pow(const Gf& a, std::uint64_t e) {
  if (!a.bound()) throw DomainError("pow requires a bound element");
  return Gf(a.field(), a.field()->pow(a.coords(), e));
}

Gf frobenius(const Gf& a, std::uint64_t s) {
  if (!a.bound()) return a;
  const auto& f = a.field();
  s %= static_cast<std::uint64_t>(f->degree());
  Poly c = a.coords();
  for (std::uint64_t i = 0; i < s; ++i) c = f->frobenius_step(c);
  return Gf(f, std::move(c));
}

std::string to_string(const Gf& a) {
  if (!a.bound()) return std::to_string(a.literal());
  return format_poly(a.coords());
}

ExtMatrix embed(const GroundMatrix& a, const FieldPtr& field) {
  ExtMatrix out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) = embed(a(i, j), field);
  }
  return out;
}

ExtMatrix zeros(Eigen::Index rows, Eigen::Index cols, const FieldPtr& field) {
  return ExtMatrix::Constant(rows, cols, field->zero());
}

ExtVector zero_vector(Eigen::Index n, const FieldPtr& field) { return ExtVector::Constant(n, field->zero()); }

}  // namespace msr
