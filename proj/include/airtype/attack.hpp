#pragma once

#include "airtype/model.hpp"

namespace airtype {

enum class AttackStrategy { FixedResource, MaxDisplace };

// Coordinated attack: all attackers transmit the same resource index with
// legitimate-looking unit-power symbols. Counted on top of the K
// legitimate devices; the receiver keeps normalizing by K.
struct AttackSpec {
    int attackers = 0;
    AttackStrategy strategy = AttackStrategy::MaxDisplace;
    int fixed_target = 1;  // only read for FixedResource
};

// Picks the extreme resource farther from the data mean; ties go to L.
int choose_target(const DataStats& stats, int l);

// Target resource for a spec, resolving MaxDisplace against the
// legitimate data statistics.
int resolve_target(const AttackSpec& attack, const DataStats& stats, int l);

}  // namespace airtype
