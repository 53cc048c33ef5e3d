#pragma once

#include <stdexcept>
#include <string>

namespace finsler {

struct invalid_model_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct degenerate_direction_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct degenerate_metric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct differentiation_failure_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct integration_diverged_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct inversion_failure_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct trivial_cut_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct undefined_energy_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct unsupported_dimension_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct incomplete_verification_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace finsler
