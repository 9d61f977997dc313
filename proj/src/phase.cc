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

#include "revos/phase.h"

#include <cctype>
#include <string>

#include "revos/error.h"

namespace revos {
namespace {

using P = Phase;
using T = Transition;
using C = TransitionCategory;

constexpr PhaseSet kRigid{P::kRigidSolid};
constexpr PhaseSet kFlexible{P::kFlexibleSolid};
constexpr PhaseSet kParticulate{P::kParticulateSolid};
constexpr PhaseSet kViscous{P::kViscousLiquid};
constexpr PhaseSet kNonViscous{P::kNonViscousLiquid};
constexpr PhaseSet kGas{P::kAerosolGas};
constexpr PhaseSet kSolid{P::kParticulateSolid, P::kRigidSolid,
                          P::kFlexibleSolid};
constexpr PhaseSet kLiquid{P::kViscousLiquid, P::kNonViscousLiquid};

constexpr std::array<TransitionRule, kNumTransitions> kTable = {{
    {T::kSeparate, C::kIntraSolid, kRigid, kRigid, "Rigid", "Rigid"},
    {T::kTwist, C::kIntraSolid, kFlexible, kFlexible, "Flexible", "Flexible"},
    {T::kBreak, C::kIntraSolid, kRigid, kParticulate, "Rigid", "Particulate"},
    {T::kStretch, C::kIntraSolid, kFlexible, kFlexible, "Flexible",
     "Flexible"},
    {T::kSplit, C::kIntraSolid, kParticulate, kParticulate, "Particulate",
     "Particulate"},
    {T::kMerge, C::kIntraSolid, kRigid, kRigid, "Rigid", "Rigid"},
    {T::kCrush, C::kIntraSolid, kRigid, kParticulate, "Rigid", "Particulate"},
    {T::kFlow, C::kIntraLiquid, kNonViscous, kNonViscous, "Non-Viscous",
     "Non-Viscous"},
    {T::kPaint, C::kIntraLiquid, kLiquid, kLiquid, "Liquid", "Liquid"},
    {T::kSplash, C::kIntraLiquid, kNonViscous, kNonViscous, "Non-Viscous",
     "Non-Viscous"},
    {T::kMix, C::kIntraLiquid, kNonViscous, kNonViscous, "Non-Viscous",
     "Non-Viscous"},
    {T::kDrip, C::kIntraLiquid, kNonViscous, kNonViscous, "Non-Viscous",
     "Non-Viscous"},
    {T::kDiffuse, C::kIntraGas, kGas, kGas, "Aerosol/Gas", "Aerosol/Gas"},
    {T::kSolidify, C::kCrossPhase, kLiquid, kSolid, "Liquid", "Solid"},
    {T::kMelt, C::kCrossPhase, kSolid, kLiquid, "Solid", "Liquid"},
    {T::kDeposition, C::kCrossPhase, kGas, kSolid, "Aerosol/Gas", "Solid"},
    {T::kVaporize, C::kCrossPhase, kLiquid, kGas, "Liquid", "Aerosol/Gas"},
    {T::kCrystallize, C::kCrossPhase, kLiquid, kSolid, "Liquid", "Solid"},
    {T::kSublimate, C::kCrossPhase, kSolid, kGas, "Solid", "Aerosol/Gas"},
    {T::kDissolve, C::kCrossPhase, kSolid, kLiquid, "Solid", "Liquid"},
    {T::kCompress, C::kCrossPhase, kSolid, kLiquid, "Solid", "Liquid"},
    {T::kFlowOut, C::kCrossPhase, kSolid, kNonViscous, "Solid",
     "Non-Viscous"},
    {T::kSoften, C::kCrossPhase, kSolid, kViscous, "Solid", "Viscous"},
}};

constexpr std::array<std::string_view, 6> kPhaseNames = {
    "ParticulateSolid", "RigidSolid",       "FlexibleSolid",
    "ViscousLiquid",    "NonViscousLiquid", "AerosolGas"};

constexpr std::array<std::string_view, kNumTransitions> kTransitionNames = {
    "Separate",   "Twist",    "Break",    "Stretch",     "Split",
    "Merge",      "Crush",    "Flow",     "Paint",       "Splash",
    "Mix",        "Drip",     "Diffuse",  "Solidify",    "Melt",
    "Deposition", "Vaporize", "Crystallize", "Sublimate", "Dissolve",
    "Compress",   "FlowOut",  "Soften"};

std::string Normalize(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == ' ' || c == '_' || c == '-' || c == '/') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

template <typename Enum, size_t N>
Enum ParseByName(std::string_view name,
                 const std::array<std::string_view, N>& names,
                 std::string_view what) {
  const std::string key = Normalize(name);
  for (size_t i = 0; i < N; ++i) {
    if (Normalize(names[i]) == key) return static_cast<Enum>(i);
  }
  throw Error(ErrorCode::kParse,
              "unknown " + std::string(what) + " '" + std::string(name) + "'");
}

}  // namespace

const std::array<TransitionRule, kNumTransitions>& TransitionTable() {
  return kTable;
}

const TransitionRule& RuleFor(Transition t) {
  return kTable[static_cast<size_t>(t)];
}

TransitionCategory CategoryOf(Transition t) { return RuleFor(t).category; }

bool IsConsistent(Phase initial, Phase final_phase, Transition transition) {
  const TransitionRule& rule = RuleFor(transition);
  return rule.initial.Contains(initial) && rule.final_state.Contains(final_phase);
}

PhaseAnnotation MakeAnnotation(Phase initial, Phase final_phase,
                               Transition transition) {
  PhaseAnnotation a{initial, final_phase, transition, CategoryOf(transition)};
  ValidateAnnotation(a);
  return a;
}

void ValidateAnnotation(const PhaseAnnotation& a) {
  const TransitionRule& rule = RuleFor(a.transition);
  if (!IsConsistent(a.initial, a.final_phase, a.transition)) {
    throw Error(ErrorCode::kAnnotationMismatch,
                std::string(TransitionName(a.transition)) + " requires " +
                    std::string(rule.initial_label) + " -> " +
                    std::string(rule.final_label) + ", got " +
                    std::string(PhaseName(a.initial)) + " -> " +
                    std::string(PhaseName(a.final_phase)));
  }
  if (a.category != rule.category) {
    throw Error(ErrorCode::kAnnotationMismatch,
                std::string(TransitionName(a.transition)) +
                    " belongs to category " +
                    std::string(CategoryName(rule.category)) + ", got " +
                    std::string(CategoryName(a.category)));
  }
}

std::string_view PhaseName(Phase p) {
  return kPhaseNames[static_cast<size_t>(p)];
}

std::string_view TransitionName(Transition t) {
  return kTransitionNames[static_cast<size_t>(t)];
}

std::string_view CategoryName(TransitionCategory c) {
  switch (c) {
    case C::kIntraSolid: return "IS";
    case C::kIntraLiquid: return "IL";
    case C::kIntraGas: return "IG";
    case C::kCrossPhase: return "CP";
  }
  return "?";
}

Phase ParsePhase(std::string_view name) {
  return ParseByName<Phase>(name, kPhaseNames, "phase");
}

Transition ParseTransition(std::string_view name) {
  return ParseByName<Transition>(name, kTransitionNames, "transition");
}

TransitionCategory ParseCategory(std::string_view name) {
  static constexpr std::array<std::string_view, 4> kShort = {"IS", "IL", "IG",
                                                             "CP"};
  static constexpr std::array<std::string_view, 4> kLong = {
      "IntraSolid", "IntraLiquid", "IntraGas", "CrossPhase"};
  const std::string key = Normalize(name);
  for (size_t i = 0; i < 4; ++i) {
    if (Normalize(kShort[i]) == key || Normalize(kLong[i]) == key) {
      return static_cast<TransitionCategory>(i);
    }
  }
  throw Error(ErrorCode::kParse, "unknown category '" + std::string(name) + "'");
}

}  // namespace revos
