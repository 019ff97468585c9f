// Finite domains, valuations, teams, properties, and their enumeration.
//
// Encodings are canonical: a valuation over the ordered domain X is the
// little-endian bit vector of its atom values; a team over X is the bitmask
// with bit i set iff the valuation with code i is a member. Unions,
// intersections and subset tests are single mask operations.
#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace teamlogic {

using Valuation = uint32_t;  // bit i = value of the i-th atom
using Team = uint32_t;       // bit c = valuation (or world) with code c present

struct Domain {
  std::vector<std::string> atoms;

  Domain() = default;
  explicit Domain(std::vector<std::string> a) : atoms(std::move(a)) {
    auto sorted = atoms;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("domain atoms must be distinct");
  }

  size_t size() const { return atoms.size(); }

  int index_of(const std::string& name) const {
    for (size_t i = 0; i < atoms.size(); ++i)
      if (atoms[i] == name) return static_cast<int>(i);
    return -1;
  }

  uint32_t num_valuations() const {
    if (atoms.size() > 16) throw std::invalid_argument("domain too large");
    return 1u << atoms.size();
  }

  // full team 2^X as a mask; valid while 2^n <= 32
  Team full_team() const {
    uint32_t nv = num_valuations();
    if (nv > 32) throw std::invalid_argument("domain too large for team masks");
    return nv == 32 ? 0xffffffffu : (1u << nv) - 1;
  }

  uint64_t num_teams() const { return uint64_t{1} << num_valuations(); }
};

inline bool val_bit(Valuation v, int atom_index) { return (v >> atom_index) & 1u; }

inline std::vector<Valuation> all_valuations(const Domain& X) {
  std::vector<Valuation> out(X.num_valuations());
  for (uint32_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

inline int team_size(Team t) { return __builtin_popcount(t); }
inline bool subset(Team s, Team t) { return (s & ~t) == 0; }

inline std::vector<Valuation> team_members(Team t) {
  std::vector<Valuation> out;
  for (Team m = t; m; m &= m - 1) out.push_back(__builtin_ctz(m));
  return out;
}

// A property over one domain: a set of teams, kept sorted and unique.
struct Property {
  std::vector<Team> teams;

  Property() = default;
  explicit Property(std::vector<Team> ts) : teams(std::move(ts)) { normalize(); }

  void normalize() {
    std::sort(teams.begin(), teams.end());
    teams.erase(std::unique(teams.begin(), teams.end()), teams.end());
  }

  bool contains(Team t) const {
    return std::binary_search(teams.begin(), teams.end(), t);
  }
  void insert(Team t) {
    auto it = std::lower_bound(teams.begin(), teams.end(), t);
    if (it == teams.end() || *it != t) teams.insert(it, t);
  }
  bool empty() const { return teams.empty(); }
  size_t size() const { return teams.size(); }
  bool operator==(const Property& o) const { return teams == o.teams; }

  // property <-> bitmask over team codes; the inverse of the team encoding
  uint64_t as_mask() const {
    uint64_t m = 0;
    for (Team t : teams) {
      if (t >= 64) throw std::invalid_argument("team code too large for property mask");
      m |= uint64_t{1} << t;
    }
    return m;
  }
  static Property from_mask(uint64_t m, uint32_t num_teams) {
    Property p;
    for (uint32_t t = 0; t < num_teams; ++t)
      if ((m >> t) & 1) p.teams.push_back(t);
    return p;
  }
};

inline Team union_all(const Property& p) {
  Team u = 0;
  for (Team t : p.teams) u |= t;
  return u;
}

// All 2^(2^n) teams over X, in code order.
class TeamRange {
 public:
  explicit TeamRange(const Domain& X) : count_(X.num_teams()) {
    if (X.num_valuations() > 24) throw std::invalid_argument("domain too large to enumerate teams");
  }
  explicit TeamRange(uint32_t base_size) : count_(uint64_t{1} << base_size) {
    if (base_size > 24) throw std::invalid_argument("base too large to enumerate teams");
  }

  struct iterator {
    uint64_t v;
    Team operator*() const { return static_cast<Team>(v); }
    iterator& operator++() { ++v; return *this; }
    bool operator!=(const iterator& o) const { return v != o.v; }
  };
  iterator begin() const { return {0}; }
  iterator end() const { return {count_}; }
  uint64_t size() const { return count_; }

 private:
  uint64_t count_;
};

inline TeamRange all_teams(const Domain& X) { return TeamRange(X); }

// All 2^(2^(2^n)) properties over X; |X| <= 2 only.
class PropertyRange {
 public:
  explicit PropertyRange(const Domain& X)
      : num_teams_(static_cast<uint32_t>(X.num_teams())) {
    if (X.size() > 2) throw std::invalid_argument("domain too large to enumerate properties");
    count_ = uint64_t{1} << num_teams_;
  }

  class iterator {
   public:
    iterator(uint64_t m, uint32_t nt) : mask_(m), num_teams_(nt) {}
    Property operator*() const { return Property::from_mask(mask_, num_teams_); }
    iterator& operator++() { ++mask_; return *this; }
    bool operator!=(const iterator& o) const { return mask_ != o.mask_; }
    uint64_t mask() const { return mask_; }

   private:
    uint64_t mask_;
    uint32_t num_teams_;
  };
  iterator begin() const { return {0, num_teams_}; }
  iterator end() const { return {count_, num_teams_}; }
  uint64_t size() const { return count_; }

 private:
  uint32_t num_teams_;
  uint64_t count_;
};

inline PropertyRange all_properties(const Domain& X) { return PropertyRange(X); }

}  // namespace teamlogic
