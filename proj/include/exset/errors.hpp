#pragma once

#include <stdexcept>
#include <string>

namespace exset {

enum class Errc {
    invalid_input,
    equal_points,
    ill_conditioned,
    non_convergent,
    not_fixed,
    point_on_line,
    repeated_factor,
    degree_unsupported,
    line_is_component,
    negative_genus,
    inconsistent_invariants,
    degenerate,
    unsupported,
    zero_parameter,
    not_diagonal,
    wrong_type,
    frame_degenerate,
    not_invariant,
    reducible,
    duplicate_line,
    parse_error,
    missing_label,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

/// Invariance failure with the offending generator/component and the best
/// residual seen while searching for a match.
class NotInvariantError : public Error {
public:
    NotInvariantError(std::string generator, std::string component, double residual)
        : Error(Errc::not_invariant,
                "component '" + component + "' is not carried onto the configuration by generator '" +
                    generator + "' (best residual " + std::to_string(residual) + ")"),
          generator_(std::move(generator)), component_(std::move(component)), residual_(residual) {}

    const std::string& generator() const { return generator_; }
    const std::string& component() const { return component_; }
    double residual() const { return residual_; }

private:
    std::string generator_;
    std::string component_;
    double residual_;
};

} // namespace exset
