#pragma once

#include <string>
#include <vector>

#include "dualsat/beamhopping.hpp"
#include "dualsat/channel.hpp"
#include "dualsat/precoding.hpp"
#include "dualsat/scheduling.hpp"

namespace dualsat {

enum class Architecture { conventional, cooperative, coordinated, cognitive, cognitive_pc };

const std::vector<Architecture>& all_architectures();
std::string architecture_name(Architecture a);
Architecture parse_architecture(const std::string& name);  // throws std::invalid_argument

struct ArchitectureResult {
    Architecture tag = Architecture::conventional;
    std::vector<double> per_user_rate;  // bits/s/Hz of total system bandwidth, one entry per pool user
    std::vector<int> served;
    double consumed_power_w = 0.0;
    bool upper_bound = false;  // true only for the cooperative bound

    double sum_rate() const;
};

struct ConventionalParams {
    std::vector<int> color1;  // color of each satellite-1 beam
    std::vector<int> color2;
    int reuse = 3;
};

// Half the band per satellite, then 1/reuse per color. Every beam gets
// P_tot / (2 K_s) and serves the first unserved user whose strongest feed it
// is. Only same-color beams of the same satellite interfere.
ArchitectureResult eval_conventional(const DualChannel& ch, double p_tot_w, const ConventionalParams& params);

// Full band on both satellites, SIUA allocation, ZF per satellite with a
// per-feed limit of P_tot / (2 K_s). Inter-satellite leakage is noise.
ArchitectureResult eval_coordinated(const DualChannel& ch, double p_tot_w, const SiuaParams& siua,
                                    PowerMode mode = PowerMode::uniform);

// Sum-power broadcast capacity of the joint channel, spread evenly over the
// pool. An upper bound, not a transmission scheme.
ArchitectureResult eval_cooperative(const DualChannel& ch, double p_tot_w, const BoundOptions& opts = {});

struct CognitiveSetup {
    SlotPattern primary;
    SlotPattern secondary;
    std::vector<int> primary_user;    // per primary beam, pool index or -1
    std::vector<int> secondary_user;  // per secondary beam, pool index or -1
};

// Primary beam b serves the first pool user homed in b. Each secondary beam
// serves the first remaining user whose strongest secondary feed it is.
CognitiveSetup make_cognitive_setup(const DualChannel& cog, const std::vector<UserTerminal>& users,
                                    const SlotPattern& primary, const SlotPattern& secondary);

struct CognitiveParams {
    bool power_control = false;
    double i_over_n_cap_db = -10.0;
    bool secondary_silent = false;
};

// cog.h1: pool x primary feeds, cog.h2: pool x secondary feeds. Each
// satellite spends P_tot / 2 per slot, split evenly over its active beams.
ArchitectureResult eval_cognitive(const DualChannel& cog, double p_tot_w, const CognitiveSetup& setup,
                                  const CognitiveParams& params);

}  // namespace dualsat
