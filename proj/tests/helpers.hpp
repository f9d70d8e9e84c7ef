#pragma once
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "loschmidt/core.hpp"

namespace test {

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    REQUIRE(a.size() == b.size());
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// Checks the bounds every echo trace must satisfy.
inline void check_echo_bounds(const loschmidt::EchoTrace& tr) {
    REQUIRE(!tr.values.empty());
    if (tr.times.front() == 0.0) CHECK(std::abs(tr.values.front() - 1.0) <= 1e-12);
    for (double v : tr.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 + 1e-12);
    }
}

template <class F>
std::string error_of(F&& f) {
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "<no exception>";
}

}  // namespace test
