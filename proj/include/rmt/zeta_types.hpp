// zeta_types.hpp
//
// Zero-list container shared by the zeta engine and the statistics layer.

#pragma once

#include <string>
#include <vector>

namespace rmt {

struct ZeroList {
    std::vector<double> ordinates;  // sorted strictly increasing, all positive
    double t_min = 0.0;
    double t_max = 0.0;
    enum class Provenance { Computed, Loaded } provenance = Provenance::Computed;
    std::string path;                    // for Loaded
    std::vector<std::string> warnings;   // advisory flags from the zero scan

    std::size_t count_below(double t) const;
    void validate() const;  // throws on unsorted or nonpositive ordinates
};

struct ComplexPoint {
    double sigma;
    double t;
};

}  // namespace rmt
