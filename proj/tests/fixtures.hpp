#pragma once

#include "wyang/pyramid.hpp"

namespace fixtures {

// Nine boxes: (+,2,1), (-,3,1), (-,4,0), top to bottom.
inline wyang::SignedPyramid nine_box() {
    return wyang::SignedPyramid::validate({{'+', 2, 1}, {'-', 3, 1}, {'-', 4, 0}});
}

// Same shape with the middle row pushed left.
inline wyang::SignedPyramid nine_box_mirror() {
    return wyang::SignedPyramid::validate({{'+', 2, 1}, {'-', 3, 0}, {'-', 4, 0}});
}

inline wyang::SignedPyramid rect_1_1(int level) {
    return wyang::SignedPyramid::validate({{'+', level, 0}, {'-', level, 0}});
}

// Four rows with two equal middle rows.
inline wyang::SignedPyramid four_row() {
    return wyang::SignedPyramid::validate({{'+', 1, 2}, {'-', 2, 1}, {'-', 2, 1}, {'-', 4, 0}});
}

inline wyang::ShiftMatrix sigma_3x3() { return {{{0, 1, 1}, {0, 0, 0}, {1, 1, 0}}}; }
inline wyang::ShiftMatrix sigma_4x4() { return {{{0, 1, 1, 2}, {0, 0, 0, 1}, {1, 1, 0, 1}, {2, 2, 1, 0}}}; }

}  // namespace fixtures
