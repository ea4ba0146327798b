#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chow/rational.hpp"

// Truncated Pontryagin algebra of curve classes on a Jacobian: the free
// polynomial ring in x_0..x_N, where x_s stands for the s-th Beauville
// component of the curve class. Terms of s-weight above N are dropped.
namespace chow {

class TautPoly {
 public:
  using Exponents = std::vector<int>;  // length N + 1

  explicit TautPoly(int n);
  static TautPoly one(int n);
  static TautPoly constant(int n, const Rational& c);
  /// x_s, or zero when s > N.
  static TautPoly var(int n, int s);
  /// Sum of x_s for s <= N.
  static TautPoly curve_class(int n);

  int truncation() const { return n_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(const Exponents& e) const;
  void add_term(const Exponents& e, const Rational& c);

  static int s_weight(const Exponents& e);
  static int factor_count(const Exponents& e);

  TautPoly& operator+=(const TautPoly& o);
  TautPoly& operator-=(const TautPoly& o);
  friend TautPoly operator+(TautPoly a, const TautPoly& b) { return a += b; }
  friend TautPoly operator-(TautPoly a, const TautPoly& b) { return a -= b; }
  friend TautPoly operator-(const TautPoly& a);
  friend TautPoly operator*(const Rational& s, const TautPoly& a);
  friend bool operator==(const TautPoly& a, const TautPoly& b);

 private:
  int n_;
  std::map<Exponents, Rational> terms_;
};

/// Throws DimensionMismatch on different truncations.
TautPoly pontryagin_mul(const TautPoly& p, const TautPoly& q);

/// -C(s+t+2, s+1) x_{s+t}, truncated at n.
TautPoly bracket_gen(int n, int s, int t);

/// Bi-derivation extension of bracket_gen.
TautPoly bracket(const TautPoly& p, const TautPoly& q);

enum class LeibnizOrder { first_argument, second_argument };

/// Same bracket, expanded recursively by the Leibniz rule, peeling factors
/// off one argument before the other.
TautPoly bracket_leibniz(const TautPoly& p, const TautPoly& q, LeibnizOrder order);

/// Algebra map x_s -> m^{s+2} x_s.
TautPoly push_m(long m, const TautPoly& p);

struct MnSides {
  TautPoly lhs;
  TautPoly rhs;
  bool holds() const { return lhs == rhs; }
};

/// {[m]_* C, [n]_* C} vs -mn([m+n]_* C - [m]_* C - [n]_* C). Throws
/// PreconditionError for m = 0 or n = 0.
MnSides mn_identity_sides(int n_trunc, long m, long n);
bool check_mn_identity(int n_trunc, long m, long n);

struct JordanWitness {
  TautPoly x;
  TautPoly y;
  TautPoly lhs;  // {{x,y},{x,x}}
  TautPoly rhs;  // {x,{y,{x,x}}}
};

struct JordanSides {
  TautPoly lhs;
  TautPoly rhs;
};

JordanSides jordan_sides(const TautPoly& x, const TautPoly& y);

/// First violation over generator pairs x = x_s, y = x_t with s outer and t
/// inner, both ascending up to N. Throws PreconditionError for N < 4.
std::optional<JordanWitness> jordan_failure_witness(int n);

/// Canonical text: terms by (s-weight, factor count, exponents), e.g. "-10*x3 + x1^2*x2".
std::string to_string(const TautPoly& p);

/// Parses the to_string format (whitespace tolerant). Throws ParseError.
TautPoly parse_taut_poly(int n, std::string_view text);

}  // namespace chow
