#pragma once

#include <cctype>
#include <concepts>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fano/errors.hpp"
#include "fano/integers.hpp"
#include "fano/prime_field.hpp"

namespace fano {

/// Coefficient-ring context for MPoly. PrimeField models this with
/// Scalar = uint32_t; IntegerRing models it with Scalar = BigInt.
template <typename R>
concept CoefficientRing = requires(const R& r, const typename R::Scalar& a,
                                   const typename R::Scalar& b, const BigInt& v) {
  typename R::Scalar;
  { r.zero() } -> std::same_as<typename R::Scalar>;
  { r.one() } -> std::same_as<typename R::Scalar>;
  { r.add(a, b) } -> std::same_as<typename R::Scalar>;
  { r.sub(a, b) } -> std::same_as<typename R::Scalar>;
  { r.mul(a, b) } -> std::same_as<typename R::Scalar>;
  { r.neg(a) } -> std::same_as<typename R::Scalar>;
  { r.div_exact(a, b) } -> std::same_as<typename R::Scalar>;
  { r.is_zero(a) } -> std::convertible_to<bool>;
  { r.equal(a, b) } -> std::convertible_to<bool>;
  { r.from_integer(v) } -> std::same_as<typename R::Scalar>;
  { r.to_string(a) } -> std::same_as<std::string>;
  { r == r } -> std::convertible_to<bool>;
};

/// The ring of arbitrary-precision integers.
struct IntegerRing {
  using Scalar = BigInt;

  [[nodiscard]] Scalar zero() const { return BigInt(0); }
  [[nodiscard]] Scalar one() const { return BigInt(1); }
  [[nodiscard]] Scalar add(const Scalar& a, const Scalar& b) const { return a + b; }
  [[nodiscard]] Scalar sub(const Scalar& a, const Scalar& b) const { return a - b; }
  [[nodiscard]] Scalar mul(const Scalar& a, const Scalar& b) const { return a * b; }
  [[nodiscard]] Scalar neg(const Scalar& a) const { return -a; }
  /// Caller guarantees divisibility (fraction-free elimination does).
  [[nodiscard]] Scalar div_exact(const Scalar& a, const Scalar& b) const { return a / b; }
  [[nodiscard]] bool is_zero(const Scalar& a) const { return a == 0; }
  [[nodiscard]] bool equal(const Scalar& a, const Scalar& b) const { return a == b; }
  [[nodiscard]] Scalar from_integer(const BigInt& v) const { return v; }
  [[nodiscard]] std::string to_string(const Scalar& a) const { return a.str(); }

  friend bool operator==(const IntegerRing&, const IntegerRing&) { return true; }
};

static_assert(CoefficientRing<IntegerRing>);
static_assert(CoefficientRing<PrimeField>);

/// Exponent vector over a fixed variable count.
class Monomial {
 public:
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

  [[nodiscard]] std::size_t nvars() const noexcept { return exps_.size(); }
  [[nodiscard]] std::uint32_t exponent(std::size_t i) const { return exps_[i]; }
  [[nodiscard]] const std::vector<std::uint32_t>& exps() const noexcept { return exps_; }

  void set_exponent(std::size_t i, std::uint32_t e) { exps_[i] = e; }

  [[nodiscard]] long long total_degree() const noexcept {
    long long d = 0;
    for (auto e : exps_) d += e;
    return d;
  }

  [[nodiscard]] Monomial operator*(const Monomial& other) const {
    if (nvars() != other.nvars()) throw invalid_input("Monomial: variable count mismatch");
    Monomial result(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) result.exps_[i] += other.exps_[i];
    return result;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::uint32_t> exps_;
};

/// Graded lexicographic order, largest first: total degree, then the
/// exponent vector with x0 most significant. Term maps iterate in this
/// order, which is the canonical serialization order.
struct GradedLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const long long da = a.total_degree();
    const long long db = b.total_degree();
    if (da != db) return da > db;
    return a.exps() > b.exps();
  }
};

/// All monomials of the given total degree in nvars variables, in the
/// canonical (descending graded-lex) order.
inline std::vector<Monomial> monomials_of_degree(std::size_t nvars, std::uint32_t degree) {
  std::vector<Monomial> result;
  if (nvars == 0) {
    if (degree == 0) result.emplace_back(std::vector<std::uint32_t>{});
    return result;
  }
  std::vector<std::uint32_t> exps(nvars, 0);
  auto rec = [&](auto&& self, std::size_t var, std::uint32_t remaining) -> void {
    if (var + 1 == nvars) {
      exps[var] = remaining;
      result.emplace_back(exps);
      return;
    }
    for (std::uint32_t e = remaining; e != std::uint32_t(-1); --e) {
      exps[var] = e;
      self(self, var + 1, remaining - e);
      if (e == 0) break;
    }
    exps[var] = 0;
  };
  rec(rec, 0, degree);
  return result;
}

/// Sparse multivariate polynomial over a coefficient ring. Immutable in
/// spirit: operations return new values. No zero coefficients are ever
/// stored, so is_zero is just emptiness and the zero polynomial has no
/// total degree (total_degree() returns nullopt as the "minus infinity"
/// marker).
template <CoefficientRing R>
class MPoly {
 public:
  using Ring = R;
  using Scalar = typename R::Scalar;
  using TermMap = std::map<Monomial, Scalar, GradedLexGreater>;

  MPoly(R ring, std::size_t nvars) : ring_(std::move(ring)), nvars_(nvars) {}

  [[nodiscard]] static MPoly constant(R ring, std::size_t nvars, Scalar value) {
    MPoly p(std::move(ring), nvars);
    p.add_term(Monomial(nvars), std::move(value));
    return p;
  }

  [[nodiscard]] static MPoly variable(R ring, std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw invalid_input("MPoly::variable: index out of range");
    MPoly p(std::move(ring), nvars);
    Monomial m(nvars);
    m.set_exponent(index, 1);
    p.add_term(std::move(m), p.ring_.one());
    return p;
  }

  [[nodiscard]] const R& ring() const noexcept { return ring_; }
  [[nodiscard]] std::size_t nvars() const noexcept { return nvars_; }
  [[nodiscard]] const TermMap& terms() const noexcept { return terms_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] std::size_t num_terms() const noexcept { return terms_.size(); }

  [[nodiscard]] std::optional<long long> total_degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first.total_degree();  // leading term has max degree
  }

  [[nodiscard]] bool is_homogeneous() const {
    if (terms_.empty()) return true;
    const long long d = terms_.begin()->first.total_degree();
    for (const auto& [mono, coeff] : terms_)
      if (mono.total_degree() != d) return false;
    return true;
  }

  [[nodiscard]] Scalar coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? ring_.zero() : it->second;
  }

  void add_term(Monomial m, Scalar c) {
    if (m.nvars() != nvars_) throw invalid_input("MPoly: monomial variable count mismatch");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (!ring_.is_zero(c)) terms_.emplace(std::move(m), std::move(c));
    } else {
      it->second = ring_.add(it->second, c);
      if (ring_.is_zero(it->second)) terms_.erase(it);
    }
  }

  friend MPoly operator+(const MPoly& a, const MPoly& b) {
    a.check_compatible(b);
    MPoly result(a);
    for (const auto& [mono, coeff] : b.terms_) result.add_term(mono, coeff);
    return result;
  }

  friend MPoly operator-(const MPoly& a, const MPoly& b) {
    a.check_compatible(b);
    MPoly result(a);
    for (const auto& [mono, coeff] : b.terms_) result.add_term(mono, a.ring_.neg(coeff));
    return result;
  }

  friend MPoly operator-(const MPoly& a) {
    MPoly result(a.ring_, a.nvars_);
    for (const auto& [mono, coeff] : a.terms_) result.terms_.emplace(mono, a.ring_.neg(coeff));
    return result;
  }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    a.check_compatible(b);
    MPoly result(a.ring_, a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) result.add_term(ma * mb, a.ring_.mul(ca, cb));
    return result;
  }

  [[nodiscard]] MPoly scalar_mul(const Scalar& s) const {
    MPoly result(ring_, nvars_);
    if (ring_.is_zero(s)) return result;
    for (const auto& [mono, coeff] : terms_) {
      Scalar c = ring_.mul(coeff, s);
      if (!ring_.is_zero(c)) result.terms_.emplace(mono, std::move(c));
    }
    return result;
  }

  [[nodiscard]] MPoly pow(std::uint32_t e) const {
    MPoly result = constant(ring_, nvars_, ring_.one());
    MPoly base(*this);
    while (e > 0) {
      if (e & 1u) result = result * base;
      e >>= 1u;
      if (e > 0) base = base * base;
    }
    return result;
  }

  [[nodiscard]] Scalar evaluate(std::span<const Scalar> point) const {
    if (point.size() != nvars_) throw invalid_input("MPoly::evaluate: point length mismatch");
    Scalar total = ring_.zero();
    for (const auto& [mono, coeff] : terms_) {
      Scalar term = coeff;
      for (std::size_t i = 0; i < nvars_; ++i)
        for (std::uint32_t e = 0; e < mono.exponent(i); ++e) term = ring_.mul(term, point[i]);
      total = ring_.add(total, term);
    }
    return total;
  }

  [[nodiscard]] MPoly partial_derivative(std::size_t var) const {
    if (var >= nvars_) throw invalid_input("partial_derivative: variable index out of range");
    MPoly result(ring_, nvars_);
    for (const auto& [mono, coeff] : terms_) {
      const std::uint32_t e = mono.exponent(var);
      if (e == 0) continue;
      Monomial m(mono);
      m.set_exponent(var, e - 1);
      result.add_term(std::move(m), ring_.mul(coeff, ring_.from_integer(BigInt(e))));
    }
    return result;
  }

  /// Canonical text form: terms in descending graded-lex order, the
  /// grammar accepted by parse_mpoly.
  [[nodiscard]] std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [mono, coeff] : terms_) {
      std::string cs = ring_.to_string(coeff);
      bool negative = !cs.empty() && cs[0] == '-';
      if (negative) cs.erase(0, 1);
      if (first) {
        if (negative) out += "-";
        first = false;
      } else {
        out += negative ? " - " : " + ";
      }
      std::string vars;
      for (std::size_t i = 0; i < nvars_; ++i) {
        const std::uint32_t e = mono.exponent(i);
        if (e == 0) continue;
        if (!vars.empty()) vars += "*";
        vars += "x" + std::to_string(i);
        if (e > 1) vars += "^" + std::to_string(e);
      }
      if (vars.empty()) {
        out += cs;
      } else if (cs == "1") {
        out += vars;
      } else {
        out += cs + "*" + vars;
      }
    }
    return out;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    if (!(a.ring_ == b.ring_) || a.nvars_ != b.nvars_) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    auto ita = a.terms_.begin();
    auto itb = b.terms_.begin();
    for (; ita != a.terms_.end(); ++ita, ++itb) {
      if (!(ita->first == itb->first) || !a.ring_.equal(ita->second, itb->second)) return false;
    }
    return true;
  }

 private:
  void check_compatible(const MPoly& other) const {
    if (nvars_ != other.nvars_)
      throw invalid_input("MPoly: operands have different variable counts");
    if (!(ring_ == other.ring_)) throw invalid_input("MPoly: operands have different rings");
  }

  R ring_;
  std::size_t nvars_;
  TermMap terms_;
};

namespace detail {

/// Recursive-descent parser for the polynomial grammar:
///   expression  = ['+'|'-'] term (('+'|'-') term)*
///   term        = coefficient ['*' factors] | factors
///   factors     = factor ('*' factor)*
///   factor      = 'x' index ['^' exponent]
/// Whitespace is ignored; coefficients are decimal integers reduced into
/// the ring.
template <CoefficientRing R>
class MPolyParser {
 public:
  MPolyParser(std::string_view text, std::size_t nvars, R ring)
      : text_(text), nvars_(nvars), ring_(std::move(ring)) {}

  MPoly<R> run() {
    MPoly<R> poly(ring_, nvars_);
    skip_ws();
    if (at_end()) throw parse_error("empty polynomial", pos_);
    int sign = consume_sign().value_or(+1);
    poly = poly + parse_term(sign);
    for (;;) {
      skip_ws();
      if (at_end()) break;
      auto s = consume_sign();
      if (!s) throw parse_error(std::string("unexpected character '") + peek() + "'", pos_);
      poly = poly + parse_term(*s);
    }
    return poly;
  }

 private:
  [[nodiscard]] bool at_end() const { return pos_ >= text_.size(); }
  [[nodiscard]] char peek() const { return text_[pos_]; }

  void skip_ws() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r'))
      ++pos_;
  }

  std::optional<int> consume_sign() {
    if (at_end()) return std::nullopt;
    if (peek() == '+') {
      ++pos_;
      return +1;
    }
    if (peek() == '-') {
      ++pos_;
      return -1;
    }
    return std::nullopt;
  }

  BigInt parse_number() {
    skip_ws();
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
      throw parse_error("expected number", pos_);
    BigInt value(0);
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (peek() - '0');
      ++pos_;
    }
    return value;
  }

  std::uint32_t parse_small_number(const char* what) {
    const std::size_t start = pos_;
    BigInt v = parse_number();
    if (v > 1000000) throw parse_error(std::string(what) + " too large", start);
    return v.convert_to<std::uint32_t>();
  }

  /// factor = 'x' index ['^' exponent]
  void parse_factor(Monomial& mono) {
    skip_ws();
    const std::size_t factor_pos = pos_;
    if (at_end() || peek() != 'x') throw parse_error("expected variable", pos_);
    ++pos_;
    const std::uint32_t index = parse_small_number("variable index");
    if (index >= nvars_)
      throw parse_error("variable index " + std::to_string(index) + " out of range (nvars = " +
                            std::to_string(nvars_) + ")",
                        factor_pos);
    std::uint32_t exponent = 1;
    skip_ws();
    if (!at_end() && peek() == '^') {
      ++pos_;
      exponent = parse_small_number("exponent");
    }
    mono.set_exponent(index, mono.exponent(index) + exponent);
  }

  MPoly<R> parse_term(int sign) {
    skip_ws();
    BigInt coeff(1);
    bool has_coeff = false;
    if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = parse_number();
      has_coeff = true;
    }
    Monomial mono(nvars_);
    bool saw_factor = false;
    skip_ws();
    // The '*' between a coefficient and the first factor is optional;
    // between factors it is mandatory.
    if (has_coeff) {
      if (!at_end() && peek() == '*') {
        ++pos_;
        parse_factor(mono);
        saw_factor = true;
      } else if (!at_end() && peek() == 'x') {
        parse_factor(mono);
        saw_factor = true;
      }
    } else {
      if (at_end() || peek() != 'x') throw parse_error("expected term", pos_);
      parse_factor(mono);
      saw_factor = true;
    }
    if (saw_factor) {
      for (;;) {
        skip_ws();
        if (at_end() || peek() != '*') break;
        ++pos_;
        parse_factor(mono);
      }
    }
    MPoly<R> result(ring_, nvars_);
    if (sign < 0) coeff = -coeff;
    result.add_term(std::move(mono), ring_.from_integer(coeff));
    return result;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t nvars_;
  R ring_;
};

}  // namespace detail

/// Parse a polynomial in variables x0 .. x{nvars-1}; coefficients are
/// reduced into the ring. Throws parse_error with the byte offset on
/// malformed input.
template <CoefficientRing R>
[[nodiscard]] MPoly<R> parse_mpoly(std::string_view text, std::size_t nvars, R ring) {
  return detail::MPolyParser<R>(text, nvars, std::move(ring)).run();
}

/// Compose f with the given images: the result is f(images[0], ...,
/// images[nvars-1]) in the images' variable set.
template <CoefficientRing R>
[[nodiscard]] MPoly<R> substitute(const MPoly<R>& f, const std::vector<MPoly<R>>& images) {
  if (images.size() != f.nvars())
    throw invalid_input("substitute: need one image per variable");
  for (const auto& g : images) {
    if (!(g.ring() == f.ring())) throw invalid_input("substitute: ring mismatch");
    if (g.nvars() != images.front().nvars())
      throw invalid_input("substitute: images disagree on variable count");
  }
  const std::size_t out_vars = images.empty() ? 0 : images.front().nvars();
  MPoly<R> result(f.ring(), out_vars);
  for (const auto& [mono, coeff] : f.terms()) {
    MPoly<R> term = MPoly<R>::constant(f.ring(), out_vars, coeff);
    for (std::size_t j = 0; j < f.nvars(); ++j) {
      const std::uint32_t e = mono.exponent(j);
      if (e > 0) term = term * images[j].pow(e);
    }
    result = result + term;
  }
  return result;
}

namespace detail {

/// Rank of a scalar matrix over the ring's fraction field, by one-step
/// fraction-free (Bareiss) elimination. Exactness of div_exact is
/// guaranteed by the Sylvester identity.
template <CoefficientRing R>
[[nodiscard]] int scalar_matrix_rank(const R& ring,
                                     std::vector<std::vector<typename R::Scalar>> m) {
  if (m.empty()) return 0;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m.front().size());
  typename R::Scalar prev = ring.one();
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (!ring.is_zero(m[r][col])) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) std::swap(m[pivot], m[rank]);
    for (int r = rank + 1; r < rows; ++r) {
      for (int c = col + 1; c < cols; ++c) {
        auto num = ring.sub(ring.mul(m[rank][col], m[r][c]), ring.mul(m[r][col], m[rank][c]));
        m[r][c] = ring.div_exact(num, prev);
      }
      m[r][col] = ring.zero();
    }
    prev = m[rank][col];
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// Restrict f to the linear subspace spanned by the rows of M: the
/// result is f(u . M) in the plane parameters u0 .. uk, fully expanded.
/// The row span lies inside V(f) if and only if the result is the zero
/// polynomial; this is the scheme-theoretic containment test and stays
/// valid over fields too small for point sampling.
template <CoefficientRing R>
[[nodiscard]] MPoly<R> restrict_to_plane(
    const MPoly<R>& f, const std::vector<std::vector<typename R::Scalar>>& plane_rows) {
  const std::size_t rows = plane_rows.size();
  if (rows == 0) throw invalid_input("restrict_to_plane: empty matrix");
  if (rows > f.nvars())
    throw invalid_input("restrict_to_plane: more rows than ambient coordinates");
  for (const auto& row : plane_rows)
    if (row.size() != f.nvars())
      throw invalid_input("restrict_to_plane: row length does not match variable count");
  if (detail::scalar_matrix_rank(f.ring(), plane_rows) != static_cast<int>(rows))
    throw invalid_input("restrict_to_plane: matrix is rank-deficient");
  std::vector<MPoly<R>> images;
  images.reserve(f.nvars());
  for (std::size_t j = 0; j < f.nvars(); ++j) {
    MPoly<R> form(f.ring(), rows);
    for (std::size_t i = 0; i < rows; ++i) {
      Monomial u(rows);
      u.set_exponent(i, 1);
      form.add_term(std::move(u), plane_rows[i][j]);
    }
    images.push_back(std::move(form));
  }
  return substitute(f, images);
}

}  // namespace fano
