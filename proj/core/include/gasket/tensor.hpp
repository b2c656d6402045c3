#pragma once

#include "gasket/states.hpp"

namespace gasket {

/// The local tensor: one physical letter, three virtual bits (one per port).
/// For each letter the two nonzero virtual patterns are a base pattern and
/// its complement; the base pattern flips exactly the port matching the
/// letter (letter 0 flips nothing).
struct TensorA {
    /// Base virtual pattern of a letter, as a 3-bit mask (bit p-1 = port p).
    static int base_pattern(int letter) { return letter == 0 ? 0 : 1 << (letter - 1); }
    /// True when the 3-bit virtual mask is one of the letter's two patterns.
    static bool entry(int letter, int mask) {
        int base = base_pattern(letter);
        return mask == base || mask == (base ^ 7);
    }
    /// The unique letter whose pattern pair contains the mask.
    static Letter letter_of(int mask) {
        if (mask >= 4) mask ^= 7;
        return (Letter)(mask == 0 ? 0 : mask == 1 ? 1 : mask == 2 ? 2 : 3);
    }
};

enum class PortConvention { Standard, Transposed };

/// Contracts one copy of the tensor per vertex over all edges, with the
/// corner anchors pinned to virtual value 1. Each virtual assignment selects
/// exactly one letter per vertex, so the result is an integer-amplitude
/// state; the sweep is 2^(edge count) and is restricted to generation <= 2.
SparseState contract_network(const Lattice& lattice);

/// Contracts three tensor copies over the block-internal index pairs, applies
/// the coarse isometry on the physical legs, and checks that the result is
/// entrywise lambda times the tensor. Returns lambda; throws
/// ConventionViolationError when the residual is not proportional.
ExactScalar check_scale_invariance(PortConvention convention = PortConvention::Standard);

} // namespace gasket
