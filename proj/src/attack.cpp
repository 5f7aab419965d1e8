#include "airtype/attack.hpp"

#include <stdexcept>

namespace airtype {

int choose_target(const DataStats& stats, int l) {
    if (l < 2) throw std::invalid_argument("choose_target: l must be >= 2");
    if (stats.min < 1 || stats.max > l || stats.min > stats.max ||
        !(stats.mean >= stats.min && stats.mean <= stats.max))
        throw std::invalid_argument("choose_target: stats outside [1, L]");
    const double up = static_cast<double>(l) - stats.mean;
    const double down = stats.mean - 1.0;
    return (up >= down) ? l : 1;
}

int resolve_target(const AttackSpec& attack, const DataStats& stats, int l) {
    if (attack.attackers < 0) throw std::invalid_argument("attack: attackers must be >= 0");
    if (attack.strategy == AttackStrategy::MaxDisplace) return choose_target(stats, l);
    if (attack.fixed_target < 1 || attack.fixed_target > l)
        throw std::invalid_argument("attack: fixed target outside [1, L]");
    return attack.fixed_target;
}

}  // namespace airtype
