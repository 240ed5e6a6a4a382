#pragma once

// Biological RNAi and recursive-RNAi reaction networks as CGF programs.
//
//   transcription   Gene -> Gene + mRNA            (Gene = tau.(mRNA | Gene))
//   polymerization  RdRp + mRNAab -> dsRNA         (channel p)
//   cleavage        dsRNA + Dicer -> k siRNA       (channel c)
//   degradation     mRNA + RISC -> Deg + RISC      (channel g)
//                   Deg -> 0  |  Deg -> mRNAab     (aberration split)
// Recursive network adds
//   siRNA + Dicer -> 0                             (channel d)
//   siRNA + RISC  -> 0                             (channel r)
// and degradation products carry siRNAs.

#include <iosfwd>
#include <string_view>

#include "rnaicgf/cgf.hpp"

namespace rnaicgf {

namespace rnai {
inline constexpr const char* kGene = "Gene";
inline constexpr const char* kRdRp = "RdRp";
inline constexpr const char* kDicer = "Dicer";
inline constexpr const char* kRisc = "RISC";
inline constexpr const char* kDsRna = "dsRNA";
inline constexpr const char* kMRna = "mRNA";
inline constexpr const char* kMRnaAb = "mRNAab";
inline constexpr const char* kSiRna = "siRNA";
inline constexpr const char* kDeg = "Deg";  // the degraded-or-aberrant product of degradation
}  // namespace rnai

struct RnaiParams {
  double transcription = 1.0;
  double polymerization = 1.0;
  double cleavage = 1.0;
  double degradation = 1.0;
  double decay_to_nothing = 1.0;   // Deg -> 0
  double decay_to_aberrant = 1.0;  // Deg -> mRNAab
  double dicer_inhibition = 1.0;
  double risc_inhibition = 1.0;

  Count dsRNA = 0;
  Count mRNA = 0;
  Count mRNAab = 0;
  Count siRNA = 0;
  Count Dicer = 0;
  Count RISC = 0;
  Count RdRp = 0;
  Count Gene = 0;

  Count sirna_per_cleave = 1;
  Count sirna_per_degrade = 1;  // recursive network only

  /// Throws std::invalid_argument on a non-positive rate or zero yield.
  void validate() const;
};

/// Reads "key = value" lines ('#' comments) over a default-constructed
/// RnaiParams. Unknown keys throw std::invalid_argument.
RnaiParams parse_rnai_params(std::string_view text);
void set_rnai_param(RnaiParams& params, std::string_view key, std::string_view value);

CgfProgram build_rnai(const RnaiParams& params);
CgfProgram build_recursive_rnai(const RnaiParams& params);

}  // namespace rnaicgf
