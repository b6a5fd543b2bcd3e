#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ghostvac/laurent.hpp"
#include "ghostvac/rat.hpp"

namespace gv {

// Dense polynomial over Q in the global coordinate t.
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<Rat> coeffs);
    static Poly constant(const Rat& c);
    static Poly monomial(const Rat& c, std::size_t deg);
    // t - a
    static Poly linear_root(const Rat& a);

    const std::vector<Rat>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    std::int64_t degree() const { return static_cast<std::int64_t>(c_.size()) - 1; }  // -1 for zero
    Rat leading() const;
    Rat eval(const Rat& a) const;
    Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rat& s) const;
    Poly derivative() const;
    // Taylor shift: p(t + a).
    Poly shifted(const Rat& a) const;
    // Reversal to degree d >= degree(): t^d * p(1/t).
    Poly reversed(std::int64_t d) const;
    std::pair<Poly, Poly> divmod(const Poly& d) const;

    bool operator==(const Poly& o) const { return c_ == o.c_; }

  private:
    void trim();
    std::vector<Rat> c_;
};

Poly gcd(const Poly& a, const Poly& b);

// Reduced rational function num/den, den monic and coprime to num.
class RatFun {
  public:
    RatFun() : num_(), den_(Poly::constant(Rat(1))) {}
    RatFun(Poly num, Poly den);
    static RatFun constant(const Rat& c) { return RatFun(Poly::constant(c), Poly::constant(Rat(1))); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RatFun operator+(const RatFun& o) const;
    RatFun operator-(const RatFun& o) const;
    RatFun operator*(const RatFun& o) const;
    RatFun operator*(const Rat& s) const;
    RatFun derivative() const;

    // Value at a finite point (throws on a pole).
    Rat eval(const Rat& a) const;
    // Value at infinity (throws if there is a pole there).
    Rat eval_infinity() const;

    bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }

  private:
    Poly num_, den_;
};

struct Point {
    bool infinite = false;
    Rat a;  // ignored when infinite

    static Point finite(const Rat& v) { return {false, v}; }
    static Point infinity() { return {true, Rat(0)}; }
    bool operator==(const Point& o) const { return infinite == o.infinite && (infinite || a == o.a); }
    std::string str() const { return infinite ? "inf" : a.get_str(); }
};

// Marked point with its formal coordinate: the standard chart (t - a, or 1/t
// at infinity), optionally reparametrized as eta = h(xi_std).
struct MarkedPoint {
    Point at;
    std::optional<LaurentSeries> reparam;  // h with h(0)=0, h'(0) != 0
};

struct Component {
    std::vector<MarkedPoint> points;
};

struct PointRef {
    int component = 0;
    int point = 0;
    bool operator==(const PointRef& o) const = default;
};

// A marked genus-0 curve or a nodal gluing of such components. The outer
// (surviving) marked points, in declaration order, index the Fock slots.
struct CurveSpec {
    std::vector<Component> components;
    std::vector<std::pair<PointRef, PointRef>> glue;

    static CurveSpec projective_line(const std::vector<MarkedPoint>& points);

    std::vector<PointRef> outer() const;
    bool is_glued(const PointRef& r) const;
    const MarkedPoint& marked(const PointRef& r) const { return components.at(r.component).points.at(r.point); }
    std::size_t num_outer() const { return outer().size(); }

    // #nodes + 1 - #components (components all genus 0).
    std::int64_t arithmetic_genus() const;

    // Normalization: same components, no glue; the former node points are
    // appended to the outer list in glue order (P+ then P- per node).
    CurveSpec normalization(std::vector<PointRef>* node_points = nullptr) const;

    void validate() const;
};

enum class SectionKind { Function, OneForm, VectorField };

// A global rational function / one-form / vector field: one rational
// expression in t per component, with the form or field twist recorded.
struct RationalSection {
    SectionKind kind = SectionKind::Function;
    std::vector<RatFun> parts;  // indexed by component
};

// Exact truncated expansion in the local coordinate of a marked point,
// including the reparametrization and the dt/dxi twist of forms and fields.
LaurentSeries expand_at(const RationalSection& x, const CurveSpec& c, const PointRef& at, std::int64_t order);

// Basis of functions with poles bounded by pole_orders at the outer points
// (indexed like CurveSpec::outer()); on a nodal curve, equal values at each
// glued pair. Deterministic order.
std::vector<RationalSection> function_basis(const CurveSpec& c, const std::vector<std::int64_t>& pole_orders);

// Basis of one-forms with bounded poles at outer points; on a nodal curve,
// sections of the dualizing sheaf (simple poles at glued pairs, opposite
// residues).
std::vector<RationalSection> form_basis(const CurveSpec& c, const std::vector<std::int64_t>& pole_orders);

// A meromorphic section with prescribed Laurent coefficients at chosen points:
// at `where[i]` the expansion must equal `targets[i]` exactly below its trunc.
// Poles are allowed up to pole_bound at `pole_points` (defaults to all outer
// points when empty). Returns nullopt when no section exists at the bound.
std::optional<RationalSection> section_with_expansions(const CurveSpec& c, SectionKind kind,
                                                       const std::vector<PointRef>& where,
                                                       const std::vector<LaurentSeries>& targets,
                                                       std::int64_t pole_bound,
                                                       const std::vector<PointRef>& pole_points = {});

struct SewingField {
    RationalSection field;          // poles only at outer points
    LaurentSeries coord_plus;       // adjusted z(xi) at P+, unit linear term
    LaurentSeries coord_minus;      // adjusted w(xi) at P-
};

// Lemma-5.6 data: a rational vector field on the normalization whose 1-jets
// at P+/P- are z/2 d/dz and w/2 d/dw after the returned coordinate
// adjustment. `order` bounds the adjusted-coordinate expansion.
SewingField sewing_vector_field(const CurveSpec& normalization, const PointRef& p_plus, const PointRef& p_minus,
                                std::int64_t order, std::int64_t pole_bound = 4);

// Family one-form lift: for each n < q_order a rational one-form on the
// normalization, holomorphic outside P+/P- and the outer points, whose
// expansions at P+ and P- match
//   tau^(n)_+ = -(sum_m a[m][n] z^{m-n-1}) dz,
//   tau^(n)_- = +(sum_m a[n][m] w^{m-n-1}) dw
// through exponent match_order-1 (entries of `a` outside its size are zero).
std::vector<RationalSection> family_form_lift(const CurveSpec& normalization, const PointRef& p_plus,
                                              const PointRef& p_minus, const std::vector<std::vector<Rat>>& a,
                                              std::int64_t q_order, std::int64_t match_order);

// Function analogue for the second gauge condition: h^(k) matches
//   h^(k)_+ = sum_n b[n][k] z^{n-k},  h^(k)_- = sum_m b[k][m] w^{m-k}
// through exponent match_order-1.
std::vector<RationalSection> family_function_lift(const CurveSpec& normalization, const PointRef& p_plus,
                                                  const PointRef& p_minus, const std::vector<std::vector<Rat>>& b,
                                                  std::int64_t q_order, std::int64_t match_order);

}  // namespace gv
