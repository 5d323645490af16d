#pragma once

#include "hypvol/anomaly.hpp"
#include "hypvol/pleated.hpp"
#include "hypvol/renvol.hpp"
#include "hypvol/schottky.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hypvol {

/// Parse or schema error; `where` is "line L, column C" for syntax errors or a JSON pointer.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string where, const std::string& message)
        : std::runtime_error(where.empty() ? message : where + ": " + message), where_(std::move(where)) {}

    const std::string& where() const { return where_; }

private:
    std::string where_;
};

enum class Mode { fuchsian_group, pleated_core, anomaly_check };
enum class ConventionChoice { paper, derived, both };

std::string to_string(Mode mode);
std::string to_string(ConventionChoice choice);
ConventionChoice convention_choice_from_string(const std::string& name);
std::vector<Convention> conventions(ConventionChoice choice);

struct PairingSpec {
    std::size_t source = 0;
    std::size_t target = 0;
    /// Row-major a, b, c, d; the standard pairing of the two circles when absent.
    std::optional<std::array<Complex, 4>> matrix;
};

/// Generator given by its repelling point p, attracting point q and translation length.
struct AxisSpec {
    double p = 0.0;
    double q = 0.0;
    double length = 0.0;
};

struct GroupConfig {
    std::vector<Circle> circles;
    std::vector<PairingSpec> pairings;
    /// Each axis appends its two circles after the explicit ones.
    std::vector<AxisSpec> axes;
};

enum class FieldKind { zero, constant, log_cosh, sin_theta, random, csv };

std::string to_string(FieldKind kind);

struct FieldSource {
    FieldKind kind = FieldKind::zero;
    double value = 0.0;      // constant
    double amplitude = 1.0;  // sin_theta, random
    int mode = 1;            // sin_theta: sin(2 pi mode theta / L)
    int modes = 3;           // random: Fourier modes per direction
    std::uint64_t seed = 1;  // random
    std::string path;        // csv, relative to the config file
};

struct AnomalyConfig {
    std::size_t n_t = 128;
    std::size_t n_theta = 128;
    double half_height = 2.0;
    double period = 6.283185307179586;
    MetricTag tag = MetricTag::hyperbolic_cylinder;
    FieldSource field;
};

struct Config {
    std::string name;
    Mode mode = Mode::fuchsian_group;
    GroupConfig group;
    PleatedCoreData pleated;
    AnomalyConfig anomaly;
    EpsilonGrid grid;
    double quadrature_tol = 1e-10;
    ConventionChoice convention = ConventionChoice::both;
    /// Directory used to resolve relative paths.
    std::string base_dir;
};

/// Parses JSON config text; `source` names the text in error messages.
Config parse_config(std::string_view text, const std::string& source = "config");
Config load_config(const std::string& path);

/// Canonical JSON rendering; parse_config(echo_config(c)) is equivalent to c.
std::string echo_config(const Config& config);

/// Circles and pairings from explicit data and axis shorthands.
SchottkyData build_group(const GroupConfig& group);

/// Checks ranges that the JSON schema cannot express (epsilon grid, counts, tolerance).
void check_config(const Config& config);

}  // namespace hypvol
