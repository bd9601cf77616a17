#ifndef FLAGMORSE_TEST_UTIL_HPP
#define FLAGMORSE_TEST_UTIL_HPP

#include <cstdint>
#include <vector>

#include "flagmorse/matrix.hpp"

namespace testutil {

/// Build a matrix from a list of columns.
inline flagmorse::Mat mat_from_cols(const flagmorse::FieldSpec& spec,
                                    const std::vector<std::vector<std::uint32_t>>& cols) {
    flagmorse::Mat m(static_cast<int>(cols.at(0).size()), static_cast<int>(cols.size()), spec);
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < cols[j].size(); ++i)
            m.set(static_cast<int>(i), static_cast<int>(j), cols[j][i]);
    return m;
}

inline std::vector<std::vector<std::uint32_t>> cols_of(const flagmorse::Mat& m) {
    std::vector<std::vector<std::uint32_t>> cols;
    for (int j = 0; j < m.cols(); ++j) {
        auto c = m.col(j);
        cols.emplace_back(c.begin(), c.end());
    }
    return cols;
}

}  // namespace testutil

#endif
