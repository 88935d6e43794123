#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rplace/balls.hpp"

namespace rplace {

/// Which edge of a ball (or which side of a filler) a cut sits on.
enum class Side { Lower, Upper };
const char* to_string(Side s);

/// Result of side_of: x belongs to the lower set D or the upper set E.
enum class Where { Below, Above };
const char* to_string(Where w);

/// Raised when a cut cannot be put in canonical form within the step bound.
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Data of a cut over R that is no ball edge: the element g behaves like
/// rstar + c * t^gamma0 with gamma0 in vR and c outside R's coefficients.
/// For r in R: r < g iff either v(r - rstar) < gamma0 and r < rstar, or the
/// gamma0-coefficient q of r - rstar satisfies q < c.
struct NonBallData {
  FieldElement rstar;
  GroupElem gamma0;      // R's own coordinates
  GroupElem gamma0_amb;  // ambient coordinates
  Quad c;
};

/// A cut (D, E) of an ordered field R (a field view).
///   MinusInf / PlusInf: D empty / E empty.
///   Edge: the lower or upper edge of a ball of R other than R itself.
///   Filler: the cut that g (an element of the ambient field or of an
///           extension of it, not in R) induces on R; the side only matters
///           for realizations.
class Cut {
 public:
  enum class Kind { MinusInf, PlusInf, Edge, Filler };

  static Cut minus_inf(Field R);
  static Cut plus_inf(Field R);
  /// Edges of the whole field are the infinite cuts.
  static Cut edge(Ball B, Side s);
  static Cut principal(Field R, FieldElement a, Side s);
  /// g in R gives the principal cut g^side.
  static Cut filler(Field R, FieldElement g, Side s);

  Kind kind() const { return kind_; }
  const Field& field() const { return field_; }
  const Ball& ball() const { return *ball_; }
  Side side() const { return side_; }
  const FieldElement& filler() const { return g_; }
  bool is_principal() const { return kind_ == Kind::Edge && ball_->is_singleton(); }
  /// Set on canonical non-ball fillers.
  const NonBallData* nonball() const { return nb_.get(); }

 private:
  friend Cut canonical(const Cut& C, std::size_t max_steps);
  Kind kind_ = Kind::MinusInf;
  Field field_;
  std::optional<Ball> ball_;
  Side side_ = Side::Lower;
  FieldElement g_;
  std::shared_ptr<const NonBallData> nb_;
};

std::string to_string(const Cut& C);

struct NonBallCertificate {
  // lo < mid < c < hi, all rational. B_{>=gamma0}(rstar) has members
  // rstar + lo*t^gamma0 below and rstar + hi*t^gamma0 above the cut, and
  // rstar + mid*t^gamma0 lies strictly between B_{>gamma0}(rstar + lo*t^gamma0)
  // and the cut; mirror statements hold on the upper side.
  Rational lo, mid_lo, mid_hi, hi;
};

struct Classification {
  enum class Kind { MinusInf, PlusInf, Principal, BallCut, NonBall, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<Ball> ball;  // Principal, BallCut
  Side side = Side::Lower;
  std::optional<NonBallData> nonball;
  std::optional<NonBallCertificate> certificate;
  std::size_t steps = 0;
  std::string note;  // Unknown: where the analysis stopped
};
const char* to_string(Classification::Kind k);

struct ClassifyOptions {
  std::size_t max_steps = kDefaultMaxSteps;
  std::optional<GroupElem> cutoff;    // in R's own coordinates
  std::optional<FieldElement> hint;   // an element of R close to the filler
};

Classification classify(const Cut& C, const ClassifyOptions& opts = {});
/// Checks a NonBall certificate against the filler by exact comparisons.
bool verify_certificate(const Cut& C, const Classification& cl);

/// Canonical representative: ball cuts become Edge, non-ball fillers become
/// Filler(rstar + c*t^gamma0) over R with nonball() set. Throws PrecisionError.
Cut canonical(const Cut& C, std::size_t max_steps = kDefaultMaxSteps);

Where side_of(const Cut& C, const FieldElement& x);
Ordering cut_cmp(const Cut& a, const Cut& b, std::size_t max_steps = kDefaultMaxSteps);
bool cut_eq(const Cut& a, const Cut& b);
/// Equal, or the two edges of one ball (the infinite cuts are the edges of R).
bool equivalent(const Cut& a, const Cut& b, std::size_t max_steps = kDefaultMaxSteps);

/// An element a of R with C1 <= a^- < a^+ <= C2. Requires C1 < C2.
FieldElement find_between(const Cut& lo, const Cut& hi, std::size_t max_steps = kDefaultMaxSteps);

/// The cut (D cap R, E cap R) of a cut of F, for R a subfield of F.
Cut restrict(const Cut& C, const Field& R, std::size_t max_steps = kDefaultMaxSteps);

/// Realization of a cut of R by an element of an extension: returns y with
/// C the cut y induces on R. Ball edges a^(+/-) of B_S use a +/- eps with
/// v(eps) at the boundary of S; fillers use g +/- eps with v(eps) above
/// everything; the infinite cuts use +/- 1/eps.
FieldElement realize(const Cut& C);

/// Cuts of F restricting to a cut of R form the interval [lower, upper].
struct Fiber {
  Cut lower;
  Cut upper;
  bool singleton = false;
};
Fiber fiber(const Cut& C, const Field& F, std::size_t max_steps = kDefaultMaxSteps);

/// Generator of a cut complement pair (D, E) of R: the pair around a ball of
/// R, or a non-ball cut of R.
struct CutComplementSpec {
  enum class Kind { BallComplement, NonBall };
  Kind kind = Kind::BallComplement;
  std::optional<Ball> ball;
  std::optional<Cut> cut;
  static CutComplementSpec around(Ball B) { return {Kind::BallComplement, std::move(B), std::nullopt}; }
  static CutComplementSpec of_cut(Cut C) { return {Kind::NonBall, std::nullopt, std::move(C)}; }
};

/// Whether a lies strictly between D and E.
bool fills(const CutComplementSpec& spec, const FieldElement& a);
/// v(E - D) as an initial segment of vR.
InitialSegment distance_set(const CutComplementSpec& spec);
/// Betw_F(D, E) = B_S(a, F) with S the largest final segment of vF above
/// v(E - D). Throws if a does not fill the pair.
Ball between_ball(const CutComplementSpec& spec, const Field& F, const FieldElement& a);
/// The canonical filler in F of a non-ball cut, if F has one.
std::optional<FieldElement> nonball_filler(const Cut& C, const Field& F);

/// Case check for fullness of the ball intervals [B^-, B^+] and (B^-, B^+):
/// each sampled ball contributes both of its edges, which must fall jointly
/// inside or jointly outside.
struct FullBallRow {
  Ball other;
  BallRelation relation;
  bool lower_in_closed, upper_in_closed, lower_in_open, upper_in_open;
  bool ok;
};
std::vector<FullBallRow> full_ball_interval(const Ball& B, const std::vector<Ball>& samples);

}  // namespace rplace
