#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace evolattice {

// Periodic integer lattice (Z/LZ)^d with interaction range M under the
// max-coordinate (Chebyshev) metric. The neighborhood of a site is every
// other site within distance M after periodic wrap, so it has
// (2M+1)^d - 1 members. L > 2M keeps wrapped neighbors distinct.
class LatticeTopology {
public:
    LatticeTopology(int dimension, int range, int side)
        : dimension_(dimension), range_(range), side_(side) {
        if (dimension_ < 1)
            throw std::invalid_argument("dimension must be >= 1, got " + std::to_string(dimension_));
        if (range_ < 1)
            throw std::invalid_argument("interaction range must be >= 1, got " + std::to_string(range_));
        if (side_ <= 2 * range_)
            throw std::invalid_argument("side length must exceed twice the interaction range; got side " +
                                        std::to_string(side_) + " with range " + std::to_string(range_));
        n_sites_ = 1;
        for (int k = 0; k < dimension_; ++k) {
            if (n_sites_ > (1LL << 31) / side_)
                throw std::invalid_argument("lattice has too many sites");
            n_sites_ *= side_;
        }
        build_offsets();
    }

    int dimension() const { return dimension_; }
    int range() const { return range_; }
    int side() const { return side_; }
    std::int64_t n_sites() const { return n_sites_; }
    int neighborhood_size() const { return static_cast<int>(offsets_.size()); }

    std::vector<int> site_to_coords(std::int64_t site) const {
        std::vector<int> c(dimension_);
        for (int k = 0; k < dimension_; ++k) {
            c[k] = static_cast<int>(site % side_);
            site /= side_;
        }
        return c;
    }

    std::int64_t coords_to_site(const std::vector<int>& coords) const {
        std::int64_t site = 0;
        for (int k = dimension_ - 1; k >= 0; --k) {
            int c = coords[k] % side_;
            if (c < 0) c += side_;
            site = site * side_ + c;
        }
        return site;
    }

    // Visit neighbors in a fixed canonical order (offset enumeration order).
    // The order depends only on the topology, never on site labels.
    template <typename F>
    void for_each_neighbor(std::int64_t site, F&& f) const {
        std::array<int, 8> c{};
        std::int64_t s = site;
        for (int k = 0; k < dimension_; ++k) {
            c[k] = static_cast<int>(s % side_);
            s /= side_;
        }
        for (const auto& off : offsets_) {
            std::int64_t y = 0;
            for (int k = dimension_ - 1; k >= 0; --k) {
                int v = c[k] + off[k];
                if (v < 0) v += side_;
                else if (v >= side_) v -= side_;
                y = y * side_ + v;
            }
            f(y);
        }
    }

    std::vector<std::int64_t> neighborhood(std::int64_t site) const {
        std::vector<std::int64_t> out;
        out.reserve(offsets_.size());
        for_each_neighbor(site, [&out](std::int64_t y) { out.push_back(y); });
        return out;
    }

private:
    void build_offsets() {
        if (dimension_ > 8)
            throw std::invalid_argument("dimension capped at 8");
        std::array<int, 8> off{};
        for (int k = 0; k < dimension_; ++k) off[k] = -range_;
        while (true) {
            bool all_zero = true;
            for (int k = 0; k < dimension_; ++k)
                if (off[k] != 0) { all_zero = false; break; }
            if (!all_zero) offsets_.push_back(off);
            int k = 0;
            for (; k < dimension_; ++k) {
                if (off[k] < range_) { ++off[k]; break; }
                off[k] = -range_;
            }
            if (k == dimension_) break;
        }
    }

    int dimension_;
    int range_;
    int side_;
    std::int64_t n_sites_;
    std::vector<std::array<int, 8>> offsets_;
};

}  // namespace evolattice
