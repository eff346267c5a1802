#include "dualsat/beamhopping.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dualsat {

std::vector<std::vector<int>> beam_adjacency(const BeamLayout& layout) {
    const int k = layout.count();
    std::vector<std::vector<int>> adj(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (i != j && distance(layout.centers[i], layout.centers[j]) < 2.0 * layout.beam_radius_km)
                adj[i].push_back(j);
    return adj;
}

std::vector<int> color_beams(const BeamLayout& layout, int slot_reuse) {
    const int k = layout.count();
    if (slot_reuse < 1) throw std::invalid_argument("slot_reuse must be >= 1");
    if (slot_reuse > k) throw std::invalid_argument("slot_reuse larger than the number of beams");
    const auto adj = beam_adjacency(layout);
    std::vector<int> color(k, -1);
    std::vector<int> used(slot_reuse, 0);
    for (int b = 0; b < k; ++b) {
        std::vector<char> blocked(slot_reuse, 0);
        for (int n : adj[b])
            if (color[n] >= 0) blocked[color[n]] = 1;
        int pick = -1;
        for (int c = 0; c < slot_reuse; ++c)
            if (!blocked[c] && (pick < 0 || used[c] < used[pick])) pick = c;
        if (pick < 0)
            throw std::invalid_argument("layout is not colorable with " + std::to_string(slot_reuse) + " colors");
        color[b] = pick;
        ++used[pick];
    }
    return color;
}

SlotPattern primary_pattern(const BeamLayout& layout, int slot_reuse) {
    SlotPattern p;
    p.period = slot_reuse;
    p.active_sets.assign(slot_reuse, {});
    if (slot_reuse == 1) {
        if (layout.count() < 1) throw std::invalid_argument("empty layout");
        p.active_sets[0].resize(layout.count());
        std::iota(p.active_sets[0].begin(), p.active_sets[0].end(), 0);
        return p;
    }
    const auto color = color_beams(layout, slot_reuse);
    for (int b = 0; b < layout.count(); ++b) p.active_sets[color[b]].push_back(b);
    return p;
}

std::vector<int> assign_parents(const BeamLayout& primary_layout, const BeamLayout& secondary_layout) {
    std::vector<int> parent(secondary_layout.count(), -1);
    const double reach = primary_layout.beam_radius_km + secondary_layout.beam_radius_km;
    for (int b = 0; b < secondary_layout.count(); ++b) {
        double best = std::numeric_limits<double>::infinity();
        for (int p = 0; p < primary_layout.count(); ++p) {
            const double d = distance(secondary_layout.centers[b], primary_layout.centers[p]);
            if (d < best) {
                best = d;
                parent[b] = p;
            }
        }
        if (!(best < reach)) throw std::invalid_argument("secondary beam " + std::to_string(b) + " has no parent");
    }
    return parent;
}

SlotPattern secondary_pattern(const SlotPattern& primary, const BeamLayout& primary_layout,
                              const BeamLayout& secondary_layout, int per_slot_budget) {
    for (const auto& set : primary.active_sets)
        for (int b : set)
            if (b < 0 || b >= primary_layout.count())
                throw std::invalid_argument("primary pattern references unknown beam " + std::to_string(b));
    const auto parent = assign_parents(primary_layout, secondary_layout);
    const double rp = primary_layout.beam_radius_km;
    // angles scaled to the small-angle regime; only the ranking matters
    constexpr double kScale = 1e-6;
    SlotPattern out;
    out.period = primary.period;
    out.slot_duration = primary.slot_duration;
    out.active_sets.resize(primary.period);
    for (int t = 0; t < primary.period; ++t) {
        const auto& act = primary.active_sets[t];
        std::vector<int> on;
        for (int b = 0; b < secondary_layout.count(); ++b) {
            if (std::find(act.begin(), act.end(), parent[b]) != act.end()) continue;
            bool clear = true;
            for (int p : act)
                if (!(distance(secondary_layout.centers[b], primary_layout.centers[p]) > rp)) clear = false;
            if (clear) on.push_back(b);
        }
        if (per_slot_budget > 0 && static_cast<int>(on.size()) > per_slot_budget) {
            std::vector<std::pair<double, int>> rank;
            for (int b : on) {
                double g = 0.0;
                for (int p : act)
                    g += antenna_gain(kScale * distance(secondary_layout.centers[b], primary_layout.centers[p]), 1.0,
                                      kScale * rp);
                rank.emplace_back(g, b);
            }
            std::stable_sort(rank.begin(), rank.end(),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
            on.clear();
            for (int i = 0; i < per_slot_budget; ++i) on.push_back(rank[i].second);
            std::sort(on.begin(), on.end());
        }
        out.active_sets[t] = std::move(on);
    }
    return out;
}

RVector secondary_power_control(const RMatrix& gain_to_primary, const RVector& nominal, double noise_w,
                                double i_over_n_cap_db) {
    if (gain_to_primary.rows() == 0 || nominal.size() == 0) return nominal;
    const double cap = db_to_lin(i_over_n_cap_db) * noise_w;
    const RVector interference = gain_to_primary * nominal;
    double factor = 1.0;
    for (Eigen::Index u = 0; u < interference.size(); ++u)
        // slack keeps the rule idempotent under rounding
        if (interference(u) > cap * (1.0 + 1e-12)) factor = std::min(factor, cap / interference(u));
    return nominal * factor;
}

std::string format_pattern(const SlotPattern& pattern, const std::string& name) {
    std::ostringstream os;
    os << "# " << name << " period=" << pattern.period << "\n";
    os << "slot\tactive\tbeams\n";
    for (int t = 0; t < pattern.period; ++t) {
        os << t << '\t' << pattern.active_sets[t].size() << '\t';
        for (std::size_t i = 0; i < pattern.active_sets[t].size(); ++i)
            os << (i ? "," : "") << pattern.active_sets[t][i];
        os << '\n';
    }
    return os.str();
}

}  // namespace dualsat
