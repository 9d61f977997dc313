// Copyright 2026 The ReVOS Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef REVOS_PHASE_H_
#define REVOS_PHASE_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace revos {

enum class Phase : uint8_t {
  kParticulateSolid,
  kRigidSolid,
  kFlexibleSolid,
  kViscousLiquid,
  kNonViscousLiquid,
  kAerosolGas,
};

enum class Transition : uint8_t {
  // Intra-phase, solid.
  kSeparate,
  kTwist,
  kBreak,
  kStretch,
  kSplit,
  kMerge,
  kCrush,
  // Intra-phase, liquid.
  kFlow,
  kPaint,
  kSplash,
  kMix,
  kDrip,
  // Intra-phase, aerosol/gas.
  kDiffuse,
  // Cross-phase.
  kSolidify,
  kMelt,
  kDeposition,
  kVaporize,
  kCrystallize,
  kSublimate,
  kDissolve,
  kCompress,
  kFlowOut,
  kSoften,
};

inline constexpr int kNumTransitions = 23;

enum class TransitionCategory : uint8_t {
  kIntraSolid,
  kIntraLiquid,
  kIntraGas,
  kCrossPhase,
};

inline constexpr std::array<TransitionCategory, 4> kAllCategories = {
    TransitionCategory::kIntraSolid, TransitionCategory::kIntraLiquid,
    TransitionCategory::kIntraGas, TransitionCategory::kCrossPhase};

// A set of phases. The transition table names some endpoints by their
// coarse class ("Solid", "Liquid"), which admits any member phase.
class PhaseSet {
 public:
  constexpr PhaseSet() = default;
  constexpr PhaseSet(std::initializer_list<Phase> phases) {
    for (Phase p : phases) bits_ |= Bit(p);
  }
  constexpr bool Contains(Phase p) const { return (bits_ & Bit(p)) != 0; }
  constexpr bool operator==(const PhaseSet&) const = default;

 private:
  static constexpr uint8_t Bit(Phase p) {
    return static_cast<uint8_t>(1u << static_cast<unsigned>(p));
  }
  uint8_t bits_ = 0;
};

struct TransitionRule {
  Transition transition;
  TransitionCategory category;
  PhaseSet initial;
  PhaseSet final_state;
  std::string_view initial_label;
  std::string_view final_label;
};

// One row per transition: the unique initial and final state each
// transition admits.
const std::array<TransitionRule, kNumTransitions>& TransitionTable();
const TransitionRule& RuleFor(Transition t);
TransitionCategory CategoryOf(Transition t);

struct PhaseAnnotation {
  Phase initial;
  Phase final_phase;
  Transition transition;
  TransitionCategory category;

  bool operator==(const PhaseAnnotation&) const = default;
};

// Builds an annotation, deriving the category from the transition.
// Throws Error(kAnnotationMismatch) when the phase pair is not the one the
// transition table lists for `transition`.
PhaseAnnotation MakeAnnotation(Phase initial, Phase final_phase,
                               Transition transition);

// Throws Error(kAnnotationMismatch) if `a` violates the transition table or
// carries the wrong category.
void ValidateAnnotation(const PhaseAnnotation& a);
bool IsConsistent(Phase initial, Phase final_phase, Transition transition);

std::string_view PhaseName(Phase p);
std::string_view TransitionName(Transition t);
std::string_view CategoryName(TransitionCategory c);  // "IS", "IL", "IG", "CP"

// Parsing ignores case, spaces, '_' and '-', so "Flow out", "flow_out" and
// "FlowOut" all name the same transition. Throws Error(kParse).
Phase ParsePhase(std::string_view name);
Transition ParseTransition(std::string_view name);
TransitionCategory ParseCategory(std::string_view name);

}  // namespace revos

#endif  // REVOS_PHASE_H_
