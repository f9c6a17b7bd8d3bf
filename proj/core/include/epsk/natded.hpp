#pragma once

// Natural deduction with existential instantiation, presented with explicit
// assumption sets, and its translations to and from the sequent calculus.

#include <stdexcept>

#include "epsk/kernel.hpp"

namespace epsk {

// Rules: Assume, TopI, AndI, AndE1, AndE2, OrI1, OrI2, OrE, ImpI, ImpE, BotE,
// AllI (eigen), AllEG / ExIG (guarded by a premise deriving t-down, omitted
// when t-down is top), ExInst (Gamma => F(eps x. F) from Gamma => exists x. F).
// In Augmented mode ExInst may also conclude the definedness formula of the
// epsilon-term, mirroring the augmented existential antecedent rule.
CheckReport check_nj(const NJDerivation& d, EpsMode mode);

class TranslationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Both require an input accepted by its own checker (InputUnchecked
// otherwise) and produce a derivation with the same end-sequent.
// nj_to_seq output checks under IPCEps / single succedent / AnyCut.
Derivation nj_to_seq(const NJDerivation& d, EpsMode mode);
// Input must check under IPCEps / single succedent / AnyCut.
NJDerivation seq_to_nj(const Derivation& d, EpsMode mode);

}  // namespace epsk
