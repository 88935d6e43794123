#include "rplace/valgroup.hpp"

#include <algorithm>
#include <stdexcept>

namespace rplace {

bool GroupElem::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const Rational& q) { return sgn(q) == 0; });
}

GroupElem& GroupElem::operator+=(const GroupElem& o) {
  if (o.dim() != dim()) throw std::invalid_argument("group element dimension mismatch");
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
  return *this;
}

GroupElem& GroupElem::operator-=(const GroupElem& o) {
  if (o.dim() != dim()) throw std::invalid_argument("group element dimension mismatch");
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= o.coords[i];
  return *this;
}

GroupElem GroupElem::operator-() const {
  GroupElem r = *this;
  for (auto& c : r.coords) c = -c;
  return r;
}

GroupElem operator*(const Rational& q, GroupElem a) {
  for (auto& c : a.coords) c *= q;
  return a;
}

std::string GroupElem::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) s += ",";
    s += to_string(coords[i]);
  }
  return s + ")";
}

GroupElem GroupElem::unit(std::size_t dim, std::size_t i) {
  GroupElem g(dim);
  g.coords.at(i) = 1;
  return g;
}

const char* to_string(Ordering o) {
  switch (o) {
    case Ordering::Less: return "LT";
    case Ordering::Equal: return "EQ";
    case Ordering::Greater: return "GT";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// ValueGroup

ValueGroup ValueGroup::lex(std::size_t n) {
  ValueGroup G;
  G.blocks_.assign(n, std::vector<Quad>{Quad(1)});
  G.index();
  return G;
}

ValueGroup ValueGroup::weighted(std::vector<Quad> weights) {
  return from_blocks({std::move(weights)});
}

namespace {

// Q-linear independence of weights in Q(sqrt d): rank of the (a_i, b_i) rows.
bool independent(const std::vector<Quad>& w) {
  if (w.size() == 1) return !w[0].is_zero();
  if (w.size() > 2) return false;
  const Rational det = w[0].rational_part() * w[1].radical_part() -
                       w[0].radical_part() * w[1].rational_part();
  return sgn(det) != 0;
}

}  // namespace

ValueGroup ValueGroup::from_blocks(std::vector<std::vector<Quad>> blocks) {
  std::int64_t d = 1;
  for (const auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("empty block in value group");
    for (const auto& w : b) {
      if (w.sign() <= 0) throw std::invalid_argument("weights must be positive");
      if (!w.is_rational()) {
        if (d != 1 && d != w.radicand()) {
          throw std::invalid_argument("weights must share one quadratic field");
        }
        d = w.radicand();
      }
    }
    if (!independent(b)) throw std::invalid_argument("weights are not Q-linearly independent");
  }
  ValueGroup G;
  G.blocks_ = std::move(blocks);
  G.index();
  return G;
}

void ValueGroup::index() {
  block_of_.clear();
  begin_.clear();
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    begin_.push_back(block_of_.size());
    for (std::size_t i = 0; i < blocks_[b].size(); ++i) block_of_.push_back(b);
  }
}

bool ValueGroup::is_lex() const {
  return std::all_of(blocks_.begin(), blocks_.end(),
                     [](const auto& b) { return b.size() == 1 && b[0] == Quad(1); });
}

Quad ValueGroup::block_value(const GroupElem& g, std::size_t b) const {
  Quad v;
  for (std::size_t i = 0; i < blocks_[b].size(); ++i) {
    const Rational& c = g.coords[begin_[b] + i];
    if (sgn(c) != 0) v += Quad(c) * blocks_[b][i];
  }
  return v;
}

Ordering ValueGroup::cmp(const GroupElem& a, const GroupElem& b) const {
  if (a.dim() != dim() || b.dim() != dim()) {
    throw std::invalid_argument("group element dimension mismatch");
  }
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    if (blocks_[k].size() == 1) {
      const int c = ::cmp(a.coords[begin_[k]], b.coords[begin_[k]]);
      if (c != 0) return to_ordering(c);
      continue;
    }
    const int s = (block_value(a, k) - block_value(b, k)).sign();
    if (s != 0) return to_ordering(s);
  }
  return Ordering::Equal;
}

int ValueGroup::sign(const GroupElem& g) const { return static_cast<int>(cmp(g, zero())); }

GroupElem ValueGroup::truncate(const GroupElem& g, std::size_t k) const {
  GroupElem r = g;
  for (std::size_t i = 0; i < r.dim(); ++i) {
    if (block_of_[i] >= k) r.coords[i] = 0;
  }
  return r;
}

ValueGroup ValueGroup::insert_block(std::size_t at, std::vector<std::size_t>& coord_map) const {
  if (at > blocks_.size()) throw std::out_of_range("insert_block position");
  ValueGroup G;
  G.blocks_ = blocks_;
  G.blocks_.insert(G.blocks_.begin() + static_cast<std::ptrdiff_t>(at), std::vector<Quad>{Quad(1)});
  G.index();
  const std::size_t new_coord = at < blocks_.size() ? begin_[at] : dim();
  coord_map.resize(dim());
  for (std::size_t i = 0; i < dim(); ++i) coord_map[i] = i < new_coord ? i : i + 1;
  return G;
}

ValueGroup ValueGroup::restrict_to(const std::vector<bool>& mask) const {
  if (mask.size() != dim()) throw std::invalid_argument("mask dimension mismatch");
  ValueGroup G;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    std::vector<Quad> w;
    for (std::size_t i = 0; i < blocks_[b].size(); ++i) {
      if (mask[begin_[b] + i]) w.push_back(blocks_[b][i]);
    }
    if (!w.empty()) G.blocks_.push_back(std::move(w));
  }
  G.index();
  return G;
}

std::string ValueGroup::str() const {
  if (is_lex()) return "lex " + std::to_string(dim());
  auto list = [](const std::vector<Quad>& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? ", " : "") + w[i].str();
    return s;
  };
  if (blocks_.size() == 1) return "weighted " + list(blocks_[0]);
  std::string s = "blocks(";
  for (std::size_t b = 0; b < blocks_.size(); ++b) s += (b ? " | " : "") + list(blocks_[b]);
  return s + ")";
}

Ordering cmp_group(const ValueGroup& G, const GroupElem& a, const GroupElem& b) {
  return G.cmp(a, b);
}

// ---------------------------------------------------------------------------
// Positions

namespace {

struct PositionKey {
  std::size_t level;  // blocks < level are fixed by `at`
  int marker;         // +1: just above everything sharing the prefix, -1: just below
};

PositionKey key_of(const ValueGroup& G, const GroupCut& c) {
  using K = GroupCut::Kind;
  switch (c.kind) {
    case K::MinusInf: return {0, -1};
    case K::PlusInf: return {0, +1};
    case K::Above: return {G.num_blocks(), +1};
    case K::Below: return {G.num_blocks(), -1};
    case K::CosetUpper: return {c.level, +1};
    case K::CosetLower: return {c.level, -1};
  }
  return {0, -1};
}

int cmp_prefix(const ValueGroup& G, const GroupElem& a, const GroupElem& b, std::size_t upto) {
  for (std::size_t k = 0; k < upto; ++k) {
    const int s = (G.block_value(a, k) - G.block_value(b, k)).sign();
    if (s != 0) return s;
  }
  return 0;
}

}  // namespace

GroupCut canonical(const ValueGroup& G, GroupCut c) {
  using K = GroupCut::Kind;
  switch (c.kind) {
    case K::MinusInf:
    case K::PlusInf:
      c.at = {};
      c.level = 0;
      return c;
    case K::Above:
    case K::Below:
      if (c.at.dim() != G.dim()) throw std::invalid_argument("group cut dimension mismatch");
      if (G.num_blocks() == 0) return c.kind == K::Above ? GroupCut::plus_inf() : GroupCut::minus_inf();
      c.level = 0;
      return c;
    case K::CosetUpper:
    case K::CosetLower: {
      if (c.at.dim() != G.dim()) throw std::invalid_argument("group cut dimension mismatch");
      const bool upper = c.kind == K::CosetUpper;
      if (c.level == 0) return upper ? GroupCut::plus_inf() : GroupCut::minus_inf();
      if (c.level >= G.num_blocks()) {
        return upper ? GroupCut::above(std::move(c.at)) : GroupCut::below(std::move(c.at));
      }
      c.at = G.truncate(c.at, c.level);
      return c;
    }
  }
  return c;
}

Ordering cmp_cut(const ValueGroup& G, const GroupCut& a, const GroupCut& b) {
  const PositionKey ka = key_of(G, a);
  const PositionKey kb = key_of(G, b);
  const std::size_t common = std::min(ka.level, kb.level);
  if (common > 0) {
    const int s = cmp_prefix(G, a.at, b.at, common);
    if (s != 0) return to_ordering(s);
  }
  if (ka.level == kb.level) return to_ordering(ka.marker - kb.marker);
  // The coarser position brackets the finer one from one side.
  if (ka.level < kb.level) return to_ordering(ka.marker);
  return to_ordering(-kb.marker);
}

bool is_below(const ValueGroup& G, const GroupElem& g, const GroupCut& c) {
  const PositionKey k = key_of(G, c);
  if (k.level > 0) {
    const int s = cmp_prefix(G, g, c.at, k.level);
    if (s != 0) return s < 0;
  }
  return k.marker > 0;
}

std::string to_string(const ValueGroup&, const GroupCut& c) {
  using K = GroupCut::Kind;
  switch (c.kind) {
    case K::MinusInf: return "-inf";
    case K::PlusInf: return "+inf";
    case K::Above: return c.at.str() + "+";
    case K::Below: return c.at.str() + "-";
    case K::CosetUpper: return "coset " + c.at.str() + "+H_" + std::to_string(c.level) + " upper";
    case K::CosetLower: return "coset " + c.at.str() + "+H_" + std::to_string(c.level) + " lower";
  }
  return "?";
}

bool contains(const ValueGroup& G, const FinalSegment& S, const GroupElem& g) {
  return !is_below(G, g, S.boundary);
}

bool contains(const ValueGroup& G, const InitialSegment& I, const GroupElem& g) {
  return is_below(G, g, I.boundary);
}

Ordering cmp_segments(const ValueGroup& G, const FinalSegment& a, const FinalSegment& b) {
  // A higher boundary means a smaller final segment.
  const Ordering o = cmp_cut(G, a.boundary, b.boundary);
  return to_ordering(-static_cast<int>(o));
}

InitialSegment complement(const FinalSegment& S) { return {S.boundary}; }
FinalSegment complement(const InitialSegment& I) { return {I.boundary}; }

std::string to_string(const ValueGroup&, const FinalSegment& S) {
  using K = GroupCut::Kind;
  const GroupCut& c = S.boundary;
  switch (c.kind) {
    case K::MinusInf: return "all";
    case K::PlusInf: return "empty";
    case K::Above: return "above " + c.at.str();
    case K::Below: return "from " + c.at.str();
    case K::CosetUpper: return "above coset " + c.at.str() + "+H_" + std::to_string(c.level);
    case K::CosetLower: return "from coset " + c.at.str() + "+H_" + std::to_string(c.level);
  }
  return "?";
}

std::string to_string(const ValueGroup&, const InitialSegment& I) {
  using K = GroupCut::Kind;
  const GroupCut& c = I.boundary;
  switch (c.kind) {
    case K::MinusInf: return "empty";
    case K::PlusInf: return "all";
    case K::Above: return "upto " + c.at.str();
    case K::Below: return "below " + c.at.str();
    case K::CosetUpper: return "upto coset " + c.at.str() + "+H_" + std::to_string(c.level);
    case K::CosetLower: return "below coset " + c.at.str() + "+H_" + std::to_string(c.level);
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Subgroups

bool CoordSubgroup::contains(const GroupElem& g) const {
  if (g.dim() != mask.size()) return false;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i] && sgn(g.coords[i]) != 0) return false;
  }
  return true;
}

CoordSubgroup ConvexSubgroup::as_coords(const ValueGroup& G) const {
  CoordSubgroup s = CoordSubgroup::trivial(G);
  for (std::size_t i = 0; i < G.dim(); ++i) s.mask[i] = G.block_of(i) >= level;
  return s;
}

std::vector<ConvexSubgroup> convex_subgroups(const ValueGroup& G) {
  std::vector<ConvexSubgroup> out;
  for (std::size_t k = 0; k <= G.num_blocks(); ++k) out.push_back({k});
  return out;
}

std::optional<std::pair<GroupElem, GroupElem>> convexity_witness(const CoordSubgroup& sub,
                                                                 const ValueGroup& G) {
  if (sub.mask.size() != G.dim()) throw std::invalid_argument("subgroup dimension mismatch");
  for (std::size_t j = 0; j < G.dim(); ++j) {
    if (!sub.mask[j]) continue;
    for (std::size_t i = 0; i < G.dim(); ++i) {
      if (sub.mask[i]) continue;
      const std::size_t bi = G.block_of(i);
      const std::size_t bj = G.block_of(j);
      if (bi < bj) continue;
      GroupElem delta = GroupElem::unit(G.dim(), j);
      GroupElem gamma = GroupElem::unit(G.dim(), i);
      // Same archimedean block: shrink gamma below delta.
      while (!G.less(gamma, delta)) gamma = Rational(1, 2) * gamma;
      return std::make_pair(gamma, delta);
    }
  }
  return std::nullopt;
}

bool is_convex(const CoordSubgroup& sub, const ValueGroup& G) {
  return !convexity_witness(sub, G).has_value();
}

bool is_cofinal(const CoordSubgroup& sub, const ValueGroup& G) {
  if (G.num_blocks() == 0) return true;
  for (std::size_t i = G.block_begin(0); i < G.block_end(0); ++i) {
    if (sub.mask.at(i)) return true;
  }
  return false;
}

SubgroupEmbedding::SubgroupEmbedding(const ValueGroup& super, CoordSubgroup sub)
    : super_(super), sub_(super.restrict_to(sub.mask)), coords_(std::move(sub)) {
  std::size_t last_block = static_cast<std::size_t>(-1);
  for (std::size_t i = 0; i < super_.dim(); ++i) {
    if (!coords_.mask[i]) continue;
    coord_map_.push_back(i);
    if (super_.block_of(i) != last_block) {
      last_block = super_.block_of(i);
      block_map_.push_back(last_block);
    }
  }
}

GroupElem SubgroupEmbedding::inject(const GroupElem& g) const {
  if (g.dim() != sub_.dim()) throw std::invalid_argument("subgroup element dimension mismatch");
  GroupElem r = super_.zero();
  for (std::size_t i = 0; i < coord_map_.size(); ++i) r.coords[coord_map_[i]] = g.coords[i];
  return r;
}

std::optional<GroupElem> SubgroupEmbedding::project(const GroupElem& g) const {
  if (!coords_.contains(g)) return std::nullopt;
  GroupElem r = sub_.zero();
  for (std::size_t i = 0; i < coord_map_.size(); ++i) r.coords[i] = g.coords[coord_map_[i]];
  return r;
}

GroupCut SubgroupEmbedding::sup_image(const GroupCut& p) const {
  using K = GroupCut::Kind;
  const std::size_t m = sub_.num_blocks();
  GroupCut q;
  switch (p.kind) {
    case K::MinusInf: q = GroupCut::minus_inf(); break;
    case K::PlusInf:
      q = m == 0 ? GroupCut::above(super_.zero()) : GroupCut::coset_upper(super_.zero(), block_map_[0]);
      break;
    case K::Above: q = GroupCut::above(inject(p.at)); break;
    case K::Below: q = GroupCut::coset_lower(inject(p.at), block_map_[m - 1] + 1); break;
    case K::CosetUpper: q = GroupCut::coset_upper(inject(p.at), block_map_[p.level]); break;
    case K::CosetLower: q = GroupCut::coset_lower(inject(p.at), block_map_[p.level - 1] + 1); break;
  }
  return canonical(super_, std::move(q));
}

GroupCut SubgroupEmbedding::inf_image(const GroupCut& p) const {
  using K = GroupCut::Kind;
  const std::size_t m = sub_.num_blocks();
  GroupCut q;
  switch (p.kind) {
    case K::PlusInf: q = GroupCut::plus_inf(); break;
    case K::MinusInf:
      q = m == 0 ? GroupCut::below(super_.zero()) : GroupCut::coset_lower(super_.zero(), block_map_[0]);
      break;
    case K::Above: q = GroupCut::coset_upper(inject(p.at), block_map_[m - 1] + 1); break;
    case K::Below: q = GroupCut::below(inject(p.at)); break;
    case K::CosetUpper: q = GroupCut::coset_upper(inject(p.at), block_map_[p.level - 1] + 1); break;
    case K::CosetLower: q = GroupCut::coset_lower(inject(p.at), block_map_[p.level]); break;
  }
  return canonical(super_, std::move(q));
}

SubgroupEmbedding::Position SubgroupEmbedding::position_of(const GroupElem& gamma) const {
  Position pos;
  GroupElem prefix = sub_.zero();
  std::size_t sub_block = 0;
  for (std::size_t b = 0; b < super_.num_blocks(); ++b) {
    bool outside = false;
    bool has_masked = false;
    for (std::size_t i = super_.block_begin(b); i < super_.block_end(b); ++i) {
      if (coords_.mask[i]) {
        has_masked = true;
      } else if (sgn(gamma.coords[i]) != 0) {
        outside = true;
      }
    }
    if (!outside) {
      for (std::size_t j = 0; j < coord_map_.size(); ++j) {
        if (super_.block_of(coord_map_[j]) == b) prefix.coords[j] = gamma.coords[coord_map_[j]];
      }
      if (has_masked) ++sub_block;
      continue;
    }
    pos.projected = prefix;
    if (has_masked) return pos;  // irrational position inside an archimedean block
    const int s = super_.block_value(gamma, b).sign();
    pos.cut = canonical(sub_, s > 0 ? GroupCut::coset_upper(prefix, sub_block)
                                    : GroupCut::coset_lower(prefix, sub_block));
    return pos;
  }
  pos.member = true;
  pos.projected = prefix;
  return pos;
}

FinalSegment segment_above(const InitialSegment& I) { return {I.boundary}; }

FinalSegment segment_above(const InitialSegment& I, const SubgroupEmbedding& emb) {
  return {emb.sup_image(I.boundary)};
}

}  // namespace rplace
