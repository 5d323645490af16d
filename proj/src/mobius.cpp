#include "hypvol/mobius.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace hypvol {

namespace {

constexpr double kIdentityTol = 1e-10;
constexpr double kParabolicBand = 1e-10;

double max_abs(Complex a, Complex b, Complex c, Complex d) {
    return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
}

}  // namespace

Complex BoundaryPoint::value() const {
    if (infinite_) {
        throw DomainError("boundary point at infinity has no finite value");
    }
    return value_;
}

double BoundaryPoint::chordal_distance(const BoundaryPoint& other) const {
    if (infinite_ && other.infinite_) {
        return 0.0;
    }
    if (infinite_ || other.infinite_) {
        const Complex z = infinite_ ? other.value_ : value_;
        return 2.0 / std::sqrt(1.0 + std::norm(z));
    }
    return 2.0 * std::abs(value_ - other.value_) /
           std::sqrt((1.0 + std::norm(value_)) * (1.0 + std::norm(other.value_)));
}

std::ostream& operator<<(std::ostream& os, const BoundaryPoint& p) {
    if (p.is_infinity()) {
        return os << "inf";
    }
    const Complex z = p.value();
    if (z.imag() == 0.0) {
        return os << z.real();
    }
    return os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
}

std::string to_string(IsometryClass c) {
    switch (c) {
        case IsometryClass::identity: return "identity";
        case IsometryClass::elliptic: return "elliptic";
        case IsometryClass::parabolic: return "parabolic";
        case IsometryClass::hyperbolic: return "hyperbolic";
    }
    return "unknown";
}

Mobius Mobius::real(double a, double b, double c, double d) {
    const double det = a * d - b * c;
    if (!(det > 0.0) || !std::isfinite(det)) {
        throw DomainError("real Mobius matrix needs a positive finite determinant, got " +
                          std::to_string(det));
    }
    const double s = std::sqrt(det);
    return Mobius(a / s, b / s, c / s, d / s, Field::real);
}

Mobius Mobius::complex(Complex a, Complex b, Complex c, Complex d) {
    const Complex det = a * d - b * c;
    if (std::abs(det) == 0.0 || !std::isfinite(std::abs(det))) {
        throw DomainError("complex Mobius matrix is singular");
    }
    const Complex s = std::sqrt(det);
    return Mobius(a / s, b / s, c / s, d / s, Field::complex);
}

Mobius Mobius::identity(Field field) {
    return Mobius(1.0, 0.0, 0.0, 1.0, field);
}

Mobius Mobius::inverse() const {
    return Mobius(d_, -b_, -c_, a_, field_);
}

bool Mobius::approx_equal(const Mobius& other, double tol) const {
    const double plus = max_abs(a_ - other.a_, b_ - other.b_, c_ - other.c_, d_ - other.d_);
    const double minus = max_abs(a_ + other.a_, b_ + other.b_, c_ + other.c_, d_ + other.d_);
    return std::min(plus, minus) <= tol;
}

Mobius compose(const Mobius& m1, const Mobius& m2) {
    if (m1.field_ != m2.field_) {
        throw FieldMismatch("cannot compose a real Mobius element with a complex one");
    }
    const Complex a = m1.a_ * m2.a_ + m1.b_ * m2.c_;
    const Complex b = m1.a_ * m2.b_ + m1.b_ * m2.d_;
    const Complex c = m1.c_ * m2.a_ + m1.d_ * m2.c_;
    const Complex d = m1.c_ * m2.b_ + m1.d_ * m2.d_;
    if (m1.field_ == Field::real) {
        return Mobius::real(a.real(), b.real(), c.real(), d.real());
    }
    return Mobius::complex(a, b, c, d);
}

Mobius conjugate(const Mobius& n, const Mobius& by) {
    return compose(compose(by, n), by.inverse());
}

IsometryClass classify(const Mobius& m) {
    if (m.approx_equal(Mobius::identity(m.field()), kIdentityTol)) {
        return IsometryClass::identity;
    }
    const Complex tr = m.trace();
    const Complex tr2 = tr * tr;
    if (m.field() == Field::complex && std::abs(tr2.imag()) > kParabolicBand) {
        return IsometryClass::hyperbolic;
    }
    const double t2 = tr2.real();
    if (std::abs(t2 - 4.0) <= kParabolicBand) {
        return IsometryClass::parabolic;
    }
    return t2 < 4.0 ? IsometryClass::elliptic : IsometryClass::hyperbolic;
}

namespace {

void require_hyperbolic(const Mobius& m, const char* what) {
    const IsometryClass cls = classify(m);
    if (cls != IsometryClass::hyperbolic) {
        throw DomainError(std::string(what) + " requires a hyperbolic element, got " +
                          to_string(cls));
    }
}

}  // namespace

double translation_length(const Mobius& m) {
    require_hyperbolic(m, "translation_length");
    if (m.field() == Field::real) {
        return 2.0 * std::acosh(std::abs(m.trace().real()) / 2.0);
    }
    return 2.0 * std::abs(std::acosh(m.trace() / 2.0).real());
}

FixedPoints fixed_points(const Mobius& m) {
    require_hyperbolic(m, "fixed_points");
    const Complex a = m.a(), b = m.b(), c = m.c(), d = m.d();
    const double scale = max_abs(a, b, c, d);

    if (std::abs(c) <= 1e-14 * scale) {
        // z -> (a z + b) / d fixes infinity with multiplier d/a there.
        const BoundaryPoint finite = b / (d - a);
        if (std::abs(d / a) < 1.0) {
            return {BoundaryPoint::infinity(), finite};
        }
        return {finite, BoundaryPoint::infinity()};
    }

    // c z^2 + (d - a) z - b = 0, discriminant tr^2 - 4.
    const Complex lin = d - a;
    Complex root = std::sqrt(lin * lin + 4.0 * b * c);
    if ((std::conj(lin) * root).real() < 0.0) {
        root = -root;
    }
    const Complex q = -0.5 * (lin + root);
    const Complex z1 = q / c;
    const Complex z2 = (std::abs(q) > 0.0) ? -b / q : (-lin - q) / c;

    const auto derivative = [&](Complex z) { return 1.0 / std::norm(c * z + d); };
    if (derivative(z1) < derivative(z2)) {
        return {BoundaryPoint(z1), BoundaryPoint(z2)};
    }
    return {BoundaryPoint(z2), BoundaryPoint(z1)};
}

BoundaryPoint apply_boundary(const Mobius& m, const BoundaryPoint& p) {
    const Complex a = m.a(), b = m.b(), c = m.c(), d = m.d();
    if (p.is_infinity()) {
        if (c == Complex(0.0)) {
            return BoundaryPoint::infinity();
        }
        return BoundaryPoint(a / c);
    }
    const Complex z = p.value();
    const Complex den = c * z + d;
    if (std::abs(den) <= 1e-15 * (std::abs(c * z) + std::abs(d))) {
        return BoundaryPoint::infinity();
    }
    const Complex w = (a * z + b) / den;
    if (m.field() == Field::real && z.imag() == 0.0) {
        return BoundaryPoint(w.real());
    }
    return BoundaryPoint(w);
}

std::ostream& operator<<(std::ostream& os, const Mobius& m) {
    const auto put = [&os, &m](Complex z) -> std::ostream& {
        if (m.field() == Field::real) {
            return os << z.real();
        }
        return os << z;
    };
    os << "[[";
    put(m.a()) << ", ";
    put(m.b()) << "], [";
    put(m.c()) << ", ";
    put(m.d()) << "]]";
    return os;
}

}  // namespace hypvol
