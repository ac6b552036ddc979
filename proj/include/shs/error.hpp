#pragma once

#include <stdexcept>
#include <string>

namespace shs {

enum class errc {
    not_square,
    not_hermitian,
    not_psd,
    zero_metric,
    dimension_mismatch,
    not_a_member,
    no_convergence,
    overflow,
    not_commuting,
    metric_mismatch,
    too_large,
    cost_guard,
    unknown_example,
    too_small,
    triangularization_failed,
    not_invertible,
    bad_input,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::not_square: return "NotSquare";
        case errc::not_hermitian: return "NotHermitian";
        case errc::not_psd: return "NotPSD";
        case errc::zero_metric: return "ZeroMetric";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::not_a_member: return "NotAMember";
        case errc::no_convergence: return "NoConvergence";
        case errc::overflow: return "Overflow";
        case errc::not_commuting: return "NotCommuting";
        case errc::metric_mismatch: return "MetricMismatch";
        case errc::too_large: return "TooLarge";
        case errc::cost_guard: return "CostGuard";
        case errc::unknown_example: return "UnknownExample";
        case errc::too_small: return "TooSmall";
        case errc::triangularization_failed: return "TriangularizationFailed";
        case errc::not_invertible: return "NotInvertible";
        case errc::bad_input: return "BadInput";
    }
    return "Unknown";
}

// All toolkit failures carry a code so the CLI can map them to exit codes
// and a diagnostic residual where one is meaningful.
class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what, double residual = 0.0)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what),
          code_(code),
          residual_(residual) {}

    errc code() const noexcept { return code_; }
    double residual() const noexcept { return residual_; }

private:
    errc code_;
    double residual_;
};

} // namespace shs
