#ifndef LCMIN_ORACLE_H
#define LCMIN_ORACLE_H

#include <optional>
#include <stdexcept>

#include "lcmin/hardness_gen.h"
#include "lcmin/netmodel.h"

namespace lcmin::oracle {

// Thrown when an instance is too large to enumerate.
class OracleRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Whether a fractional flow with one commodity per demand pair fits within
// theta times the active capacities. Built directly on the LP kernel.
bool mcf_feasible(const Network& network, const ActivePorts& active,
                  const TrafficMatrix& tm, double theta);

struct LcOptimum {
  int objective = 0;
  ActivePorts witness;
};

// Exact minimum of sum over vertices of ceil(active ports / k), by trying
// objective levels from the bottom. Within a level only port choices that
// cannot be extended without raising the level are checked, since adding
// ports never breaks feasibility. nullopt when even all ports fail. Refuses
// when the number of port choices exceeds max_states.
std::optional<LcOptimum> brute_force_lc_mcfs(const Network& network, const TrafficMatrix& tm,
                                             double theta, int k,
                                             double max_states = 1e8);

// Minimum cover size by subset enumeration; nullopt when no cover exists.
// Refuses families of more than 20 sets.
std::optional<int> brute_force_set_cover(const SetCoverInstance& sc);

}  // namespace lcmin::oracle

#endif  // LCMIN_ORACLE_H
