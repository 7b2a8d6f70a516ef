#pragma once

#include <stdexcept>
#include <string>

namespace padlab {

struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a valuation assertion cannot be decided at the current
// working precision.  Callers retry with doubled precision (see
// precision_context in padic.hpp).
struct insufficient_precision : error {
    explicit insufficient_precision(const std::string& msg)
        : error("insufficient precision: " + msg) {}
};

struct generator_mismatch : error {
    explicit generator_mismatch(const std::string& msg)
        : error("generator mismatch: " + msg) {}
};

struct oracle_mismatch : error {
    explicit oracle_mismatch(const std::string& msg)
        : error("oracle mismatch: " + msg) {}
};

struct no_gap : error {
    explicit no_gap(const std::string& msg) : error("no gap: " + msg) {}
};

struct witness_not_found : error {
    explicit witness_not_found(const std::string& msg)
        : error("witness not found: " + msg) {}
};

struct no_congruent_character : error {
    explicit no_congruent_character(const std::string& msg)
        : error("no congruent character: " + msg) {}
};

struct not_symplectic : error {
    explicit not_symplectic(const std::string& msg)
        : error("not symplectic: " + msg) {}
};

struct not_integral : error {
    explicit not_integral(const std::string& msg)
        : error("not p-integral: " + msg) {}
};

struct not_plus : error {
    explicit not_plus(const std::string& msg)
        : error("torus element not in the plus cone: " + msg) {}
};

struct no_simple_segment : error {
    explicit no_simple_segment(const std::string& msg)
        : error("no simple Newton segment: " + msg) {}
};

struct zero_eigenvalue : error {
    explicit zero_eigenvalue(const std::string& msg)
        : error("zero eigenvalue: " + msg) {}
};

struct not_regular : error {
    explicit not_regular(const std::string& msg)
        : error("torus point not regular: " + msg) {}
};

struct config_invalid : error {
    explicit config_invalid(const std::string& msg)
        : error("invalid config: " + msg) {}
};

}  // namespace padlab
