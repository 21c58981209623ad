#include "nashphase/pne.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "nashphase/errors.hpp"

namespace nashphase {

namespace {

// Gray-code walker over all assignments to one vertex subset. The subset
// must be closed under adjacency (a union of components), so bits outside
// it can never matter. Low local bits are given to low-degree vertices:
// they flip most often and cost 1 + deg(v) updates per flip.
class SubsetEnumerator {
 public:
  SubsetEnumerator(const GraphicalGame& game, const std::vector<int>& verts)
      : verts_(verts), k_(static_cast<int>(verts.size())) {
    std::sort(verts_.begin(), verts_.end(), [&](int a, int b) {
      int da = game.graph.degree(a), db = game.graph.degree(b);
      return da != db ? da < db : a < b;
    });
    std::vector<int> local(game.graph.vertex_count() + 1, -1);
    for (int i = 0; i < k_; ++i) local[verts_[i]] = i;
    words_.resize(k_);
    row_.assign(k_, 0);
    update_begin_.assign(k_ + 1, 0);
    for (int i = 0; i < k_; ++i) {
      const auto& t = game.tables[verts_[i]];
      words_[i] = t.bits.data();
      update_begin_[i] = static_cast<int>(updates_.size());
      // A flip of vertex i toggles one row bit in each neighbor's table.
      for (int u : game.graph.neighbors(verts_[i])) {
        const auto& tu = game.tables[u];
        const auto& ord = tu.neighbor_order;
        size_t pos = std::lower_bound(ord.begin(), ord.end(), verts_[i]) -
                     ord.begin();
        updates_.push_back({local[u], uint64_t{1} << pos});
      }
    }
    update_begin_[k_] = static_cast<int>(updates_.size());
  }

  // Visits every assignment; visitor(local_profile) returns false to stop.
  // Returns the number of profiles examined.
  template <typename Visitor>
  uint64_t enumerate(Visitor&& visit) {
    uint64_t cur = 0;
    std::fill(row_.begin(), row_.end(), 0);
    uint32_t sat = 0;
    for (int i = 0; i < k_; ++i)
      sat |= static_cast<uint32_t>(!head_bit(i, 0)) << i;
    const uint32_t full =
        (k_ >= 32) ? ~uint32_t{0} : ((uint32_t{1} << k_) - 1);
    uint64_t examined = 1;
    if (sat == full && !visit(cur)) return examined;
    const uint64_t total = uint64_t{1} << k_;
    for (uint64_t step = 1; step < total; ++step) {
      int b = std::countr_zero(step);
      cur ^= uint64_t{1} << b;
      // b's table row is unchanged and its own bit flipped, so its
      // satisfaction simply toggles.
      sat ^= uint32_t{1} << b;
      const int lo = update_begin_[b], hi = update_begin_[b + 1];
      for (int t = lo; t < hi; ++t) {
        const auto& [u, rbit] = updates_[t];
        uint64_t ru = (row_[u] ^= rbit);
        uint32_t eq = static_cast<uint32_t>(
            ((words_[u][ru >> 6] >> (ru & 63)) & 1) == ((cur >> u) & 1));
        sat = (sat & ~(uint32_t{1} << u)) | (eq << u);
      }
      ++examined;
      if (sat == full && !visit(cur)) return examined;
    }
    return examined;
  }

  // Local assignment -> global profile. Only meaningful for n <= 64.
  Profile to_global(uint64_t local_profile) const {
    Profile p = 0;
    for (int i = 0; i < k_; ++i)
      if ((local_profile >> i) & 1) p |= Profile{1} << (verts_[i] - 1);
    return p;
  }

 private:
  bool head_bit(int i, uint64_t row) const {
    return (words_[i][row >> 6] >> (row & 63)) & 1;
  }

  std::vector<int> verts_;
  int k_;
  std::vector<const uint64_t*> words_;
  std::vector<uint64_t> row_;
  std::vector<std::pair<int, uint64_t>> updates_;
  std::vector<int> update_begin_;
};

struct ComponentCount {
  uint64_t count = 0;
  uint64_t work = 0;
  std::optional<std::vector<Profile>> profiles;  // global encoding
};

ComponentCount count_subset(const GraphicalGame& game,
                            const std::vector<int>& verts,
                            uint64_t retention, bool record_profiles) {
  SubsetEnumerator en(game, verts);
  ComponentCount out;
  bool keep = record_profiles;
  std::vector<Profile> found;
  out.work = en.enumerate([&](uint64_t local) {
    ++out.count;
    if (keep) {
      if (out.count > retention) {
        keep = false;
        found.clear();
      } else {
        found.push_back(en.to_global(local));
      }
    }
    return true;
  });
  if (keep) {
    std::sort(found.begin(), found.end());
    out.profiles = std::move(found);
  }
  return out;
}

}  // namespace

PneResult count_pne_exhaustive(const GraphicalGame& game,
                               const PneCaps& caps) {
  const int n = game.graph.vertex_count();
  if (n > kEnumerationCap)
    throw SizeLimitExceeded("count_pne_exhaustive: n = " + std::to_string(n) +
                            " exceeds the enumeration cap of " +
                            std::to_string(kEnumerationCap));
  std::vector<int> all(n);
  for (int v = 1; v <= n; ++v) all[v - 1] = v;
  auto c = count_subset(game, all, caps.profile_retention, n <= 64);
  return {c.count, std::move(c.profiles), c.work};
}

PneResult count_pne(const GraphicalGame& game, const PneCaps& caps) {
  const int limit = std::min(caps.component_limit, kEnumerationCap);
  const int n = game.graph.vertex_count();
  PneResult result;
  result.count = 1;
  bool keep = n <= 64;
  std::vector<Profile> acc{0};
  for (const auto& comp : connected_components(game.graph)) {
    if (static_cast<int>(comp.size()) > limit)
      throw SizeLimitExceeded(
          "count_pne: component containing vertex " +
          std::to_string(comp.front()) + " has " +
          std::to_string(comp.size()) + " vertices, cap is " +
          std::to_string(limit));
    auto c = count_subset(game, comp, caps.profile_retention, keep);
    result.work += c.work;
    result.count *= c.count;
    if (keep) {
      if (!c.profiles || result.count > caps.profile_retention) {
        keep = false;
        acc.clear();
      } else {
        // Cross product: one choice per component, OR-ed together.
        std::vector<Profile> next;
        next.reserve(acc.size() * c.profiles->size());
        for (Profile a : acc)
          for (Profile b : *c.profiles) next.push_back(a | b);
        acc = std::move(next);
      }
    }
  }
  if (keep) {
    std::sort(acc.begin(), acc.end());
    result.profiles = std::move(acc);
  }
  return result;
}

bool exists_pne(const GraphicalGame& game, const PneCaps& caps) {
  const int limit = std::min(caps.component_limit, kEnumerationCap);
  for (const auto& comp : connected_components(game.graph)) {
    if (static_cast<int>(comp.size()) > limit)
      throw SizeLimitExceeded(
          "exists_pne: component containing vertex " +
          std::to_string(comp.front()) + " has " +
          std::to_string(comp.size()) + " vertices, cap is " +
          std::to_string(limit));
    SubsetEnumerator en(game, comp);
    bool found = false;
    en.enumerate([&](uint64_t) {
      found = true;
      return false;
    });
    if (!found) return false;
  }
  return true;
}

std::vector<Profile> dependence_neighborhood_b0(const Graph& g) {
  const int n = g.vertex_count();
  if (n > kEnumerationCap)
    throw SizeLimitExceeded("dependence_neighborhood_b0: n = " +
                            std::to_string(n) + " exceeds " +
                            std::to_string(kEnumerationCap));
  // Players ordered by ascending degree: small masks accept early.
  std::vector<uint64_t> masks;
  masks.reserve(n);
  for (int v = 1; v <= n; ++v) masks.push_back(g.neighbor_mask(v));
  std::sort(masks.begin(), masks.end(),
            [](uint64_t a, uint64_t b) {
              return std::popcount(a) < std::popcount(b);
            });
  std::vector<Profile> b0;
  const uint64_t total = uint64_t{1} << n;
  for (uint64_t j = 0; j < total; ++j) {
    for (uint64_t m : masks) {
      if ((j & m) == 0) {
        b0.push_back(j);
        break;
      }
    }
  }
  return b0;
}

std::vector<Profile> translate_b(Profile i, const std::vector<Profile>& b0) {
  std::vector<Profile> out;
  out.reserve(b0.size());
  for (Profile j : b0) out.push_back(i ^ j);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace nashphase
