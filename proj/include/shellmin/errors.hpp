#pragma once

#include <stdexcept>
#include <string>

namespace shellmin {

// Error taxonomy shared by all modules. The CLI maps these to distinct
// exit codes, so keep the hierarchy flat and stable.

struct quadrature_error : std::runtime_error {
    explicit quadrature_error(const std::string& what) : std::runtime_error(what) {}
};

struct bracketing_error : std::runtime_error {
    explicit bracketing_error(const std::string& what) : std::runtime_error(what) {}
};

struct singularity_error : std::domain_error {
    explicit singularity_error(const std::string& what) : std::domain_error(what) {}
};

// Profile scans that find more sign changes than the theory allows
// (tolerance too loose, or parameters outside the valid window).
struct structure_error : std::runtime_error {
    explicit structure_error(const std::string& what) : std::runtime_error(what) {}
};

struct step_collapse_error : std::runtime_error {
    explicit step_collapse_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace shellmin
