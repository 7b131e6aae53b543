#pragma once
/* regime.hpp -- enclosure regime labels shared by every solver. */

#include <string>

namespace enclose {

enum class Regime {
    NoEnclosure,
    Partial,
    Full,
    Multiple,  // decentralized only: both corners self-enforcing
    Unresolved // defensive default for flagged cells
};

inline const char* to_string(Regime r) {
    switch (r) {
        case Regime::NoEnclosure: return "no_enclosure";
        case Regime::Partial: return "partial";
        case Regime::Full: return "full";
        case Regime::Multiple: return "multiple";
        default: return "unresolved";
    }
}

} // namespace enclose
