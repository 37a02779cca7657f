#pragma once

#include <cstdint>

namespace fastgabor {

/// Arithmetic accounting for a filtering run.
///
/// Counting convention: a fused multiply-add counts as one multiplication and
/// one addition; subtraction counts as an addition; division counts as a
/// multiplication. Recursive filters count their coefficient products and
/// accumulations per sample per direction, plus the fixed boundary-state
/// initialization per line. Trigonometric table construction, memory copies,
/// and conjugate fills are not counted.
struct OpCounters {
    std::uint64_t multiplications = 0;
    std::uint64_t additions = 0;
    std::uint64_t smoothings_h = 0;  // 1-D smoothings along rows
    std::uint64_t smoothings_v = 0;  // 1-D smoothings along columns

    OpCounters& operator+=(const OpCounters& o) noexcept {
        multiplications += o.multiplications;
        additions += o.additions;
        smoothings_h += o.smoothings_h;
        smoothings_v += o.smoothings_v;
        return *this;
    }

    friend OpCounters operator+(OpCounters a, const OpCounters& b) noexcept { return a += b; }
    bool operator==(const OpCounters&) const = default;
};

}  // namespace fastgabor
