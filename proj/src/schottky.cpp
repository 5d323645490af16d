#include "hypvol/schottky.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hypvol {

Complex Circle::point_at(double angle) const {
    return center + std::polar(radius, angle);
}

std::string to_string(ValidationFailure kind) {
    switch (kind) {
        case ValidationFailure::malformed: return "malformed";
        case ValidationFailure::nonpositive_radius: return "nonpositive_radius";
        case ValidationFailure::overlapping_disks: return "overlapping_disks";
        case ValidationFailure::self_paired: return "self_paired";
        case ValidationFailure::unpaired_circle: return "unpaired_circle";
        case ValidationFailure::multiply_paired: return "multiply_paired";
        case ValidationFailure::not_fuchsian: return "not_fuchsian";
        case ValidationFailure::exterior_to_exterior: return "exterior_to_exterior";
        case ValidationFailure::circle_not_mapped: return "circle_not_mapped";
    }
    return "unknown";
}

namespace {

bool is_real_map(const Mobius& m) {
    if (m.field() == Field::real) {
        return true;
    }
    return m.a().imag() == 0.0 && m.b().imag() == 0.0 && m.c().imag() == 0.0 &&
           m.d().imag() == 0.0;
}

std::string describe(const char* what, std::size_t i, std::size_t j) {
    std::ostringstream os;
    os << what << " (circles " << i << " and " << j << ")";
    return os.str();
}

void check_pairing(const SchottkyData& data, std::size_t index, const ValidationOptions& options) {
    const Pairing& pairing = data.pairings[index];
    const Circle& source = data.circles[pairing.source];
    const Circle& target = data.circles[pairing.target];

    // All disks are bounded, so infinity probes the exterior of the source disk.
    const BoundaryPoint probe = apply_boundary(pairing.map, BoundaryPoint::infinity());
    if (probe.is_infinity() || std::abs(probe.value() - target.center) >= target.radius) {
        throw ValidationError(ValidationFailure::exterior_to_exterior,
                              describe("pairing map sends the exterior of the source disk outside the "
                                       "target disk",
                                       pairing.source, pairing.target),
                              {pairing.source, pairing.target}, {index});
    }

    constexpr int kSamples = 8;
    for (int k = 0; k < kSamples; ++k) {
        const double angle = 2.0 * std::numbers::pi * (k + 0.25) / kSamples;
        const BoundaryPoint image = apply_boundary(pairing.map, source.point_at(angle));
        const double miss = image.is_infinity()
                                ? HUGE_VAL
                                : std::abs(std::abs(image.value() - target.center) - target.radius);
        if (!(miss <= options.mapping_tol * target.radius)) {
            throw ValidationError(ValidationFailure::circle_not_mapped,
                                  describe("pairing map does not carry the source circle onto the target "
                                           "circle",
                                           pairing.source, pairing.target),
                                  {pairing.source, pairing.target}, {index});
        }
    }
}

}  // namespace

ValidatedGroup::ValidatedGroup(SchottkyData data) : data_(std::move(data)) {
    pairing_of_.assign(data_.circles.size(), 0);
    for (std::size_t k = 0; k < data_.pairings.size(); ++k) {
        pairing_of_[data_.pairings[k].source] = k;
        pairing_of_[data_.pairings[k].target] = k;
    }
}

ValidatedGroup validate(SchottkyData data, const ValidationOptions& options) {
    const std::size_t n = data.circles.size();
    if (n == 0 || data.pairings.size() * 2 != n) {
        throw ValidationError(ValidationFailure::malformed,
                              "a genus-g group needs 2g circles and g pairings, got " + std::to_string(n) +
                                  " circles and " + std::to_string(data.pairings.size()) + " pairings");
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double r = data.circles[i].radius;
        if (!(r > 0.0) || !std::isfinite(r) || !std::isfinite(std::abs(data.circles[i].center))) {
            throw ValidationError(ValidationFailure::nonpositive_radius,
                                  "circle " + std::to_string(i) + " needs a finite positive radius", {i});
        }
    }

    std::vector<int> uses(n, 0);
    for (std::size_t k = 0; k < data.pairings.size(); ++k) {
        const Pairing& p = data.pairings[k];
        if (p.source >= n || p.target >= n) {
            throw ValidationError(ValidationFailure::malformed,
                                  "pairing " + std::to_string(k) + " refers to a missing circle", {}, {k});
        }
        if (p.source == p.target) {
            throw ValidationError(ValidationFailure::self_paired,
                                  "pairing " + std::to_string(k) + " pairs circle " +
                                      std::to_string(p.source) + " to itself",
                                  {p.source}, {k});
        }
        ++uses[p.source];
        ++uses[p.target];
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (uses[i] == 0) {
            throw ValidationError(ValidationFailure::unpaired_circle,
                                  "circle " + std::to_string(i) + " is not paired", {i});
        }
        if (uses[i] > 1) {
            throw ValidationError(ValidationFailure::multiply_paired,
                                  "circle " + std::to_string(i) + " appears in more than one pairing", {i});
        }
    }

    if (data.fuchsian) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!data.circles[i].is_real()) {
                throw ValidationError(ValidationFailure::not_fuchsian,
                                      "circle " + std::to_string(i) + " is not centered on the real line",
                                      {i});
            }
        }
        for (std::size_t k = 0; k < data.pairings.size(); ++k) {
            const Mobius& m = data.pairings[k].map;
            if (!is_real_map(m)) {
                throw ValidationError(ValidationFailure::not_fuchsian,
                                      "pairing " + std::to_string(k) + " has non-real entries", {}, {k});
            }
            if (m.field() == Field::complex) {
                data.pairings[k].map = Mobius::real(m.a().real(), m.b().real(), m.c().real(), m.d().real());
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Circle& a = data.circles[i];
            const Circle& b = data.circles[j];
            const double gap = std::abs(a.center - b.center) - a.radius - b.radius;
            if (!(gap > options.min_gap)) {
                throw ValidationError(ValidationFailure::overlapping_disks,
                                      describe("closed disks are not disjoint", i, j), {i, j});
            }
        }
    }

    for (std::size_t k = 0; k < data.pairings.size(); ++k) {
        check_pairing(data, k, options);
    }

    return ValidatedGroup(std::move(data));
}

AxisGenerator generator_from_axis(const BoundaryPoint& p, const BoundaryPoint& q, double length) {
    if (p.is_infinity() || q.is_infinity()) {
        throw DomainError("generator_from_axis needs finite fixed points (the isometric circle would be "
                          "centered at infinity)");
    }
    if (!p.is_real() || !q.is_real()) {
        throw DomainError("generator_from_axis builds Fuchsian generators; fixed points must be real");
    }
    const double rep = p.real();
    const double att = q.real();
    if (rep == att) {
        throw DomainError("generator_from_axis needs distinct fixed points");
    }
    if (!(length > 0.0)) {
        throw DomainError("generator_from_axis needs a positive translation length");
    }
    // Conjugate diag(e^{s/2}, e^{-s/2}) by the map 0 -> p, inf -> q.
    const double ep = std::exp(0.5 * length);
    const double em = std::exp(-0.5 * length);
    const double w = att - rep;
    const Mobius map = Mobius::real((att * ep - rep * em) / w, rep * att * (em - ep) / w, (ep - em) / w,
                                    (att * em - rep * ep) / w);
    const double c = map.c().real();
    const double radius = 1.0 / std::abs(c);
    return {map, Circle{Complex(-map.d().real() / c, 0.0), radius},
            Circle{Complex(map.a().real() / c, 0.0), radius}};
}

Mobius standard_pairing(const Circle& source, const Circle& target) {
    const Complex cs = source.center;
    const Complex ct = target.center;
    const double rr = source.radius * target.radius;
    if (source.is_real() && target.is_real()) {
        return Mobius::real(ct.real(), -ct.real() * cs.real() - rr, 1.0, -cs.real());
    }
    return Mobius::complex(ct, -ct * cs - rr, 1.0, -cs);
}

Circle image_circle(const Mobius& m, const Circle& circle) {
    if (m.c() != Complex(0.0)) {
        const Complex pole = -m.d() / m.c();
        if (std::abs(pole - circle.center) <= circle.radius * (1.0 + 1e-12)) {
            throw DomainError("image of the disk under this element is unbounded");
        }
    }
    if (circle.is_real() && m.field() == Field::real) {
        const double x0 = apply_boundary(m, BoundaryPoint(circle.left())).real();
        const double x1 = apply_boundary(m, BoundaryPoint(circle.right())).real();
        return Circle{Complex(0.5 * (x0 + x1), 0.0), 0.5 * std::abs(x1 - x0)};
    }
    const Complex z1 = apply_boundary(m, circle.point_at(0.0)).value();
    const Complex z2 = apply_boundary(m, circle.point_at(2.0 * std::numbers::pi / 3.0)).value();
    const Complex z3 = apply_boundary(m, circle.point_at(4.0 * std::numbers::pi / 3.0)).value();
    // Circumcenter of three points.
    const Complex w = (z3 - z1) / (z2 - z1);
    const Complex center = z1 + (z2 - z1) * (w - std::norm(w)) / (w - std::conj(w));
    return Circle{center, std::abs(z1 - center)};
}

SchottkyData conjugate(const SchottkyData& data, const Mobius& m) {
    SchottkyData out;
    out.fuchsian = data.fuchsian && m.field() == Field::real;
    out.circles.reserve(data.circles.size());
    for (const Circle& c : data.circles) {
        out.circles.push_back(image_circle(m, c));
    }
    for (const Pairing& p : data.pairings) {
        out.pairings.push_back({p.source, p.target, conjugate(p.map, m)});
    }
    return out;
}

std::vector<Word> enumerate_words(const ValidatedGroup& group, int max_len) {
    if (max_len < 0) {
        throw std::invalid_argument("enumerate_words needs max_len >= 0");
    }
    std::vector<Letter> alphabet;
    for (std::size_t i = 0; i < group.genus(); ++i) {
        alphabet.push_back({i, 1});
        alphabet.push_back({i, -1});
    }
    std::vector<Word> words{Word{}};
    std::size_t layer_begin = 0;
    for (int len = 1; len <= max_len; ++len) {
        const std::size_t layer_end = words.size();
        for (std::size_t w = layer_begin; w < layer_end; ++w) {
            for (const Letter& x : alphabet) {
                const Word& base = words[w];
                if (!base.empty() && base.back().generator == x.generator &&
                    base.back().exponent == -x.exponent) {
                    continue;
                }
                Word next = base;
                next.push_back(x);
                words.push_back(std::move(next));
            }
        }
        layer_begin = layer_end;
    }
    return words;
}

Mobius evaluate(const ValidatedGroup& group, const Word& word) {
    const Field field = group.fuchsian() ? Field::real : group.pairings().front().map.field();
    Mobius m = Mobius::identity(field);
    for (const Letter& x : word) {
        const Mobius& g = group.pairings().at(x.generator).map;
        m = compose(m, x.exponent > 0 ? g : g.inverse());
    }
    return m;
}

std::vector<BoundaryPoint> limit_set_sample(const ValidatedGroup& group, int depth) {
    if (depth < 1) {
        throw std::invalid_argument("limit_set_sample needs depth >= 1");
    }
    std::vector<Complex> points;
    for (const Word& word : enumerate_words(group, depth)) {
        if (word.empty()) {
            continue;
        }
        const Letter& last = word.back();
        const Pairing& p = group.pairings()[last.generator];
        // The last letter carries the exterior of `from` into a disk, so every other center
        // lands in the nested disk of the full word.
        const std::size_t from = last.exponent > 0 ? p.source : p.target;
        const Mobius m = evaluate(group, word);
        for (std::size_t c = 0; c < group.circles().size(); ++c) {
            if (c == from) {
                continue;
            }
            points.push_back(apply_boundary(m, BoundaryPoint(group.circles()[c].center)).value());
        }
    }
    std::sort(points.begin(), points.end(), [](Complex x, Complex y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    std::vector<BoundaryPoint> out;
    for (const Complex& z : points) {
        if (!out.empty() && std::abs(out.back().value() - z) <= 1e-12) {
            continue;
        }
        out.emplace_back(group.fuchsian() ? Complex(z.real(), 0.0) : z);
    }
    return out;
}

}  // namespace hypvol
