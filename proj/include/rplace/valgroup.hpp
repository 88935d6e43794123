#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rplace/quad.hpp"

namespace rplace {

/// Element of a value group, as a coordinate vector over Q. The order is
/// supplied by the owning ValueGroup.
struct GroupElem {
  std::vector<Rational> coords;

  GroupElem() = default;
  explicit GroupElem(std::size_t dim) : coords(dim, Rational(0)) {}
  explicit GroupElem(std::vector<Rational> c) : coords(std::move(c)) {}

  std::size_t dim() const { return coords.size(); }
  bool is_zero() const;

  GroupElem& operator+=(const GroupElem& o);
  GroupElem& operator-=(const GroupElem& o);
  friend GroupElem operator+(GroupElem a, const GroupElem& b) { return a += b; }
  friend GroupElem operator-(GroupElem a, const GroupElem& b) { return a -= b; }
  GroupElem operator-() const;
  friend GroupElem operator*(const Rational& q, GroupElem a);
  friend bool operator==(const GroupElem&, const GroupElem&) = default;

  /// "(q1,...,qn)"; "()" for the trivial group.
  std::string str() const;
  static GroupElem unit(std::size_t dim, std::size_t i);
};

enum class Ordering { Less = -1, Equal = 0, Greater = 1 };
inline Ordering to_ordering(int s) {
  return s < 0 ? Ordering::Less : (s > 0 ? Ordering::Greater : Ordering::Equal);
}
const char* to_string(Ordering o);

/// Ordered abelian group Q^n, ordered lexicographically by archimedean blocks.
///
/// Each block is a run of coordinates with positive, Q-linearly independent
/// real weights in Q(sqrt d); inside a block elements compare by the real
/// number sum(c_i * w_i), across blocks the first differing block decides.
/// `lex(n)` is n blocks of weight 1; `weighted(w)` is a single block. The
/// convex subgroups are exactly H_k = (all blocks >= k), 0 <= k <= blocks.
class ValueGroup {
 public:
  ValueGroup() = default;
  static ValueGroup lex(std::size_t n);
  static ValueGroup weighted(std::vector<Quad> weights);
  /// General form: one weight list per block, most significant block first.
  static ValueGroup from_blocks(std::vector<std::vector<Quad>> blocks);

  std::size_t dim() const { return block_of_.size(); }
  std::size_t num_blocks() const { return blocks_.size(); }
  const std::vector<Quad>& block_weights(std::size_t b) const { return blocks_[b]; }
  std::size_t block_of(std::size_t coord) const { return block_of_[coord]; }
  std::size_t block_begin(std::size_t b) const { return begin_[b]; }
  std::size_t block_end(std::size_t b) const { return begin_[b] + blocks_[b].size(); }
  bool is_lex() const;

  Quad block_value(const GroupElem& g, std::size_t b) const;
  Ordering cmp(const GroupElem& a, const GroupElem& b) const;
  bool less(const GroupElem& a, const GroupElem& b) const { return cmp(a, b) == Ordering::Less; }
  int sign(const GroupElem& g) const;

  GroupElem zero() const { return GroupElem(dim()); }
  /// Zero every coordinate in blocks >= k (projection modulo H_k).
  GroupElem truncate(const GroupElem& g, std::size_t k) const;

  /// New group with a one-coordinate block of weight 1 inserted before block
  /// `at`; coordinate map old -> new is returned through `coord_map`.
  ValueGroup insert_block(std::size_t at, std::vector<std::size_t>& coord_map) const;

  /// Subgroup spanned by the masked coordinates, with the induced order.
  ValueGroup restrict_to(const std::vector<bool>& mask) const;

  std::string str() const;
  friend bool operator==(const ValueGroup&, const ValueGroup&) = default;

 private:
  void index();
  std::vector<std::vector<Quad>> blocks_;
  std::vector<std::size_t> block_of_;
  std::vector<std::size_t> begin_;
};

/// A position in a value group, i.e. one of the finitely describable
/// Dedekind cuts: +-infinity, just above/below an element, or the upper/lower
/// edge of a coset g + H_k of a proper nontrivial convex subgroup.
/// Values are kept canonical (see canonical()) so equality is structural.
struct GroupCut {
  enum class Kind { MinusInf, PlusInf, Above, Below, CosetUpper, CosetLower };
  Kind kind = Kind::MinusInf;
  GroupElem at;         // Above/Below/Coset*
  std::size_t level = 0;  // Coset*: H = blocks >= level

  static GroupCut minus_inf() { return {Kind::MinusInf, {}, 0}; }
  static GroupCut plus_inf() { return {Kind::PlusInf, {}, 0}; }
  static GroupCut above(GroupElem g) { return {Kind::Above, std::move(g), 0}; }
  static GroupCut below(GroupElem g) { return {Kind::Below, std::move(g), 0}; }
  static GroupCut coset_upper(GroupElem g, std::size_t k) { return {Kind::CosetUpper, std::move(g), k}; }
  static GroupCut coset_lower(GroupElem g, std::size_t k) { return {Kind::CosetLower, std::move(g), k}; }

  friend bool operator==(const GroupCut&, const GroupCut&) = default;
};

GroupCut canonical(const ValueGroup& G, GroupCut c);
/// Order of positions.
Ordering cmp_cut(const ValueGroup& G, const GroupCut& a, const GroupCut& b);
/// True iff g lies strictly below the position.
bool is_below(const ValueGroup& G, const GroupElem& g, const GroupCut& c);
std::string to_string(const ValueGroup& G, const GroupCut& c);

/// S = { delta : delta above boundary }.
struct FinalSegment {
  GroupCut boundary;
  static FinalSegment all() { return {GroupCut::minus_inf()}; }
  static FinalSegment empty() { return {GroupCut::plus_inf()}; }
  bool is_empty() const { return boundary.kind == GroupCut::Kind::PlusInf; }
  bool is_all() const { return boundary.kind == GroupCut::Kind::MinusInf; }
  friend bool operator==(const FinalSegment&, const FinalSegment&) = default;
};

/// I = { delta : delta below boundary }.
struct InitialSegment {
  GroupCut boundary;
  friend bool operator==(const InitialSegment&, const InitialSegment&) = default;
};

bool contains(const ValueGroup& G, const FinalSegment& S, const GroupElem& g);
bool contains(const ValueGroup& G, const InitialSegment& I, const GroupElem& g);
/// Inclusion order on final segments: Less means a is a proper subset of b.
Ordering cmp_segments(const ValueGroup& G, const FinalSegment& a, const FinalSegment& b);
InitialSegment complement(const FinalSegment& S);
FinalSegment complement(const InitialSegment& I);

/// "all", "empty", "above (q)", "from (q)", "above coset (g)+H_k", "from coset (g)+H_k".
std::string to_string(const ValueGroup& G, const FinalSegment& S);
std::string to_string(const ValueGroup& G, const InitialSegment& I);

Ordering cmp_group(const ValueGroup& G, const GroupElem& a, const GroupElem& b);

/// Coordinate subgroup of G: the masked coordinates may be nonzero.
struct CoordSubgroup {
  std::vector<bool> mask;
  static CoordSubgroup whole(const ValueGroup& G) { return {std::vector<bool>(G.dim(), true)}; }
  static CoordSubgroup trivial(const ValueGroup& G) { return {std::vector<bool>(G.dim(), false)}; }
  bool contains(const GroupElem& g) const;
  friend bool operator==(const CoordSubgroup&, const CoordSubgroup&) = default;
};

/// Convex subgroup H_k of a group, described by its first block.
struct ConvexSubgroup {
  std::size_t level = 0;
  CoordSubgroup as_coords(const ValueGroup& G) const;
};

bool is_convex(const CoordSubgroup& sub, const ValueGroup& G);
/// Witness (gamma outside, delta inside, 0 < gamma < delta) if not convex.
std::optional<std::pair<GroupElem, GroupElem>> convexity_witness(const CoordSubgroup& sub,
                                                                 const ValueGroup& G);
bool is_cofinal(const CoordSubgroup& sub, const ValueGroup& G);
std::vector<ConvexSubgroup> convex_subgroups(const ValueGroup& G);

/// Order embedding of the subgroup `sub` (with its induced order) into `super`.
class SubgroupEmbedding {
 public:
  SubgroupEmbedding(const ValueGroup& super, CoordSubgroup sub);

  const ValueGroup& super() const { return super_; }
  const ValueGroup& sub() const { return sub_; }
  const CoordSubgroup& coords() const { return coords_; }

  GroupElem inject(const GroupElem& g) const;
  /// Coordinates of an element of the image; nullopt if not in the subgroup.
  std::optional<GroupElem> project(const GroupElem& g) const;

  /// Position q in super with { gamma above q } the largest final segment
  /// disjoint from the image of { delta below p }.
  GroupCut sup_image(const GroupCut& p) const;
  /// Position q in super with { gamma above q } the upward closure of the
  /// image of { delta above p }.
  GroupCut inf_image(const GroupCut& p) const;

  /// Where an element of super sits relative to the subgroup. `member` is
  /// set when gamma lies in the image; `cut` is empty when the position is
  /// not one of the describable kinds (irrational cut inside a block).
  struct Position {
    bool member = false;
    GroupElem projected;
    std::optional<GroupCut> cut;
  };
  Position position_of(const GroupElem& gamma) const;

 private:
  ValueGroup super_;
  ValueGroup sub_;
  CoordSubgroup coords_;
  std::vector<std::size_t> coord_map_;     // sub coord -> super coord
  std::vector<std::size_t> block_map_;     // sub block -> super block
};

/// Largest final segment disjoint from I (same group).
FinalSegment segment_above(const InitialSegment& I);
/// Largest final segment of the super group disjoint from the image of I.
FinalSegment segment_above(const InitialSegment& I, const SubgroupEmbedding& emb);

}  // namespace rplace
