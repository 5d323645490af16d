#pragma once

#include <complex>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace hypvol {

using Complex = std::complex<double>;

/// Raised when an operation is handed an argument outside its mathematical domain
/// (e.g. asking for the translation length of a parabolic element).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when real (Fuchsian) and complex Mobius elements are mixed.
class FieldMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Field { real, complex };

/// A point of the Riemann sphere, with an explicit point at infinity.
class BoundaryPoint {
public:
    BoundaryPoint() = default;
    BoundaryPoint(double x) : value_(x, 0.0) {}  // NOLINT(google-explicit-constructor)
    BoundaryPoint(Complex z) : value_(z) {}       // NOLINT(google-explicit-constructor)

    static BoundaryPoint infinity() {
        BoundaryPoint p;
        p.infinite_ = true;
        return p;
    }

    bool is_infinity() const { return infinite_; }
    bool is_real(double tol = 0.0) const { return infinite_ || std::abs(value_.imag()) <= tol; }

    /// Finite value; throws DomainError at infinity.
    Complex value() const;
    double real() const { return value().real(); }

    /// Chordal distance on the unit sphere (diameter 2); well defined at infinity.
    double chordal_distance(const BoundaryPoint& other) const;

private:
    Complex value_{0.0, 0.0};
    bool infinite_ = false;
};

std::ostream& operator<<(std::ostream& os, const BoundaryPoint& p);

enum class IsometryClass { identity, elliptic, parabolic, hyperbolic };

std::string to_string(IsometryClass c);

/// Orientation preserving isometry of H^2 (real field) or H^3 (complex field),
/// stored as a determinant-one matrix [[a, b], [c, d]]. Equality is up to sign.
class Mobius {
public:
    /// Identity of the real field.
    Mobius() = default;

    /// Real matrix with positive determinant, rescaled to determinant one.
    static Mobius real(double a, double b, double c, double d);
    /// Complex matrix with nonzero determinant, rescaled by a square root of the determinant.
    static Mobius complex(Complex a, Complex b, Complex c, Complex d);
    static Mobius identity(Field field = Field::real);

    Field field() const { return field_; }
    Complex a() const { return a_; }
    Complex b() const { return b_; }
    Complex c() const { return c_; }
    Complex d() const { return d_; }

    Complex trace() const { return a_ + d_; }
    Complex determinant() const { return a_ * d_ - b_ * c_; }

    Mobius inverse() const;

    /// Entrywise comparison up to a global sign.
    bool approx_equal(const Mobius& other, double tol = 1e-10) const;

private:
    Mobius(Complex a, Complex b, Complex c, Complex d, Field field)
        : a_(a), b_(b), c_(c), d_(d), field_(field) {}

    Complex a_{1.0}, b_{0.0}, c_{0.0}, d_{1.0};
    Field field_ = Field::real;

    friend Mobius compose(const Mobius& m1, const Mobius& m2);
};

/// m1 after m2 (matrix product m1 * m2), renormalized to determinant one.
Mobius compose(const Mobius& m1, const Mobius& m2);
inline Mobius operator*(const Mobius& m1, const Mobius& m2) { return compose(m1, m2); }

/// m * n * m^-1
Mobius conjugate(const Mobius& n, const Mobius& by);

IsometryClass classify(const Mobius& m);

/// 2 arccosh(|tr|/2) for real elements; 2 |Re arccosh(tr/2)| for loxodromic ones.
double translation_length(const Mobius& m);

struct FixedPoints {
    BoundaryPoint attracting;
    BoundaryPoint repelling;
};

FixedPoints fixed_points(const Mobius& m);

BoundaryPoint apply_boundary(const Mobius& m, const BoundaryPoint& p);

std::ostream& operator<<(std::ostream& os, const Mobius& m);

}  // namespace hypvol
