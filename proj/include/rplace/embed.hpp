#pragma once

#include <string>

#include "rplace/places.hpp"

namespace rplace {

/// An extension F of R (views of one ambient field) with the convexity and
/// cofinality of vR in vF.
struct EmbeddingContext {
  Field R, F;
  bool convex = false;
  bool cofinal = false;
  static EmbeddingContext make(Field R, Field F);
  SubgroupEmbedding value_embedding() const { return R.value_embedding_into(F); }
};

bool embedding_exists(const EmbeddingContext& ctx);

/// The cut embedding C(R) -> C(F): ball edges go to the edges of B_S(a, F)
/// with S the segment of vF above vR minus S0; a non-ball cut (D, E) goes to
/// D+ of F, the lower edge of its between-ball when F fills it.
Cut iota_tilde(const Cut& C, const EmbeddingContext& ctx);
/// The place of iota_tilde of the cut of zeta.
RPlace iota_place(const RPlace& zeta, const EmbeddingContext& ctx);

struct NonConvexWitness {
  GroupElem alpha, beta;   // in vR (R's coordinates)
  GroupElem gamma;         // in vF \ vR (F's coordinates)
  FinalSegment S0;         // of vR: delta > gamma
  Ball B0;                 // B_{S0}(0, R)
  FinalSegment S;          // of vF: segment above vR \ S0
  Cut B0_plus_F;           // the cut right above B0 in F
  Cut BS_plus_F;           // B_S(0, F)+
  Ordering comparison = Ordering::Equal;
  FieldElement inside;     // element of B0, so B0 is no singleton
  FieldElement outside;    // element of R outside B0
  FieldElement between;    // u with B0+_F < u < B_S(0,F)+
  std::vector<std::pair<std::string, bool>> checks;
  bool ok() const;
};
NonConvexWitness nonconvex_witness(const EmbeddingContext& ctx);

struct PrincipalPreservation {
  bool cofinal = false;
  Cut image;             // iota_tilde(0+)
  bool image_principal = false;
  bool consistent() const { return cofinal == image_principal; }
};
PrincipalPreservation principal_preservation(const EmbeddingContext& ctx);

}  // namespace rplace
