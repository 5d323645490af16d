#pragma once

#include "hypvol/mobius.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypvol {

struct Circle {
    Complex center;
    double radius = 0.0;

    bool is_real() const { return center.imag() == 0.0; }
    /// Leftmost and rightmost real points; meaningful for real-centered circles.
    double left() const { return center.real() - radius; }
    double right() const { return center.real() + radius; }
    Complex point_at(double angle) const;
};

/// Pairing `map` carries circle `source` onto circle `target`, exterior into interior.
struct Pairing {
    std::size_t source = 0;
    std::size_t target = 0;
    Mobius map;
};

struct SchottkyData {
    std::vector<Circle> circles;
    std::vector<Pairing> pairings;
    bool fuchsian = true;
};

enum class ValidationFailure {
    malformed,
    nonpositive_radius,
    overlapping_disks,
    self_paired,
    unpaired_circle,
    multiply_paired,
    not_fuchsian,
    exterior_to_exterior,
    circle_not_mapped,
};

std::string to_string(ValidationFailure kind);

class ValidationError : public std::invalid_argument {
public:
    ValidationError(ValidationFailure kind, std::string message, std::vector<std::size_t> circles = {},
                    std::vector<std::size_t> pairings = {})
        : std::invalid_argument(std::move(message)),
          kind_(kind),
          circles_(std::move(circles)),
          pairings_(std::move(pairings)) {}

    ValidationFailure kind() const { return kind_; }
    /// Offending circle indices.
    const std::vector<std::size_t>& circles() const { return circles_; }
    /// Offending pairing indices.
    const std::vector<std::size_t>& pairings() const { return pairings_; }

private:
    ValidationFailure kind_;
    std::vector<std::size_t> circles_;
    std::vector<std::size_t> pairings_;
};

struct ValidationOptions {
    /// Closed disks must be separated by strictly more than this gap.
    double min_gap = 1e-9;
    /// Relative tolerance for circle-onto-circle checks.
    double mapping_tol = 1e-9;
};

/// Schottky data that passed every structural check. Immutable.
class ValidatedGroup {
public:
    const SchottkyData& data() const { return data_; }
    const std::vector<Circle>& circles() const { return data_.circles; }
    const std::vector<Pairing>& pairings() const { return data_.pairings; }
    std::size_t genus() const { return data_.pairings.size(); }
    bool fuchsian() const { return data_.fuchsian; }

    /// Pairing index that involves circle `circle`.
    std::size_t pairing_of(std::size_t circle) const { return pairing_of_[circle]; }

private:
    explicit ValidatedGroup(SchottkyData data);

    SchottkyData data_;
    std::vector<std::size_t> pairing_of_;

    friend ValidatedGroup validate(SchottkyData data, const ValidationOptions& options);
};

ValidatedGroup validate(SchottkyData data, const ValidationOptions& options = {});

/// A hyperbolic generator with its isometric circle and the image circle.
struct AxisGenerator {
    Mobius map;
    Circle source;
    Circle target;
};

/// Real hyperbolic element repelling from `p`, attracting to `q`, translating by `length`.
AxisGenerator generator_from_axis(const BoundaryPoint& p, const BoundaryPoint& q, double length);

/// z -> c_t - r_s r_t / (z - c_s): maps circle s onto circle t, exterior into interior.
Mobius standard_pairing(const Circle& source, const Circle& target);

/// Image of a bounded circle under m; throws DomainError if the image disk is unbounded.
Circle image_circle(const Mobius& m, const Circle& circle);

/// Conjugate every pairing and move every circle by m.
SchottkyData conjugate(const SchottkyData& data, const Mobius& m);

struct Letter {
    std::size_t generator = 0;
    int exponent = 1;  // +1 or -1

    bool operator==(const Letter&) const = default;
};

using Word = std::vector<Letter>;

/// Reduced words of length <= max_len, ordered by length then letter order.
std::vector<Word> enumerate_words(const ValidatedGroup& group, int max_len);

/// Group element of the word, product left to right.
Mobius evaluate(const ValidatedGroup& group, const Word& word);

/// Points approximating the limit set: each nontrivial reduced word of length <= depth applied to
/// every circle center outside the disk its last letter expands. Sorted, deduplicated within 1e-12.
std::vector<BoundaryPoint> limit_set_sample(const ValidatedGroup& group, int depth);

}  // namespace hypvol
