#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "evolattice/lattice.hpp"

namespace evolattice {

enum class Strategy : std::uint8_t { s1 = 1, s2 = 2 };

inline Strategy opposite(Strategy s) { return s == Strategy::s1 ? Strategy::s2 : Strategy::s1; }

inline int strategy_label(Strategy s) { return static_cast<int>(s); }

// Full strategy assignment on a finite torus.
struct Configuration {
    LatticeTopology topology;
    std::vector<Strategy> labels;

    Configuration(LatticeTopology top, Strategy fill)
        : topology(std::move(top)),
          labels(static_cast<std::size_t>(topology.n_sites()), fill) {}

    Configuration(LatticeTopology top, std::vector<Strategy> l)
        : topology(std::move(top)), labels(std::move(l)) {
        if (static_cast<std::int64_t>(labels.size()) != topology.n_sites())
            throw std::invalid_argument("label vector size does not match site count");
    }

    Strategy at(std::int64_t site) const { return labels[static_cast<std::size_t>(site)]; }
    void set(std::int64_t site, Strategy s) { labels[static_cast<std::size_t>(site)] = s; }

    std::int64_t count(Strategy s) const {
        std::int64_t n = 0;
        for (Strategy l : labels)
            if (l == s) ++n;
        return n;
    }

    Configuration label_swapped() const {
        Configuration out(*this);
        for (Strategy& l : out.labels) l = opposite(l);
        return out;
    }
};

}  // namespace evolattice
