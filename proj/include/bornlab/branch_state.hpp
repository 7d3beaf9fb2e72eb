// Copyright 2026 The born-lab Authors
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

#ifndef BORNLAB_BRANCH_STATE_HPP
#define BORNLAB_BRANCH_STATE_HPP

#include <compare>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bornlab/rational.hpp"

namespace bornlab {

using Amplitude = std::complex<double>;

/// Index into the measured system's alphabet. kErased is the ground state
/// that the erasing operation writes.
using SystemSymbol = std::int32_t;
inline constexpr SystemSymbol kErased = -1;

/// A qubit value, an index into a T-symbol alphabet (T = 2: 0 = spade, 1 = heart).
using QubitSymbol = std::uint16_t;

struct MindSlot {
    enum class Kind : std::uint8_t { Ready, Aware, Empty };

    Kind kind = Kind::Ready;
    SystemSymbol outcome = kErased;

    static constexpr MindSlot ready() { return {Kind::Ready, kErased}; }
    static constexpr MindSlot aware(SystemSymbol outcome) { return {Kind::Aware, outcome}; }
    static constexpr MindSlot empty() { return {Kind::Empty, kErased}; }

    bool is_aware() const { return kind == Kind::Aware; }

    auto operator<=>(const MindSlot &) const = default;
};

enum class Field : std::uint8_t {
    System = 1,
    Env = 2,
    Minds = 4,
    Qubits = 8,
};

/// The set of label fields a state carries.
class LabelSchema {
   public:
    constexpr LabelSchema() = default;
    constexpr LabelSchema(std::initializer_list<Field> fields) {
        for (Field f : fields) bits_ |= static_cast<std::uint8_t>(f);
    }

    constexpr bool has(Field f) const { return bits_ & static_cast<std::uint8_t>(f); }
    constexpr bool disjoint(LabelSchema other) const { return (bits_ & other.bits_) == 0; }
    constexpr LabelSchema operator|(LabelSchema other) const {
        LabelSchema s;
        s.bits_ = bits_ | other.bits_;
        return s;
    }
    constexpr bool operator==(const LabelSchema &) const = default;

   private:
    std::uint8_t bits_ = 0;
};

/// Composite branch label. Fields absent from the owning state's schema keep
/// their defaults. Ordering is lexicographic over (system, env, minds, qubits).
struct BranchLabel {
    SystemSymbol system = kErased;
    std::string env;
    std::vector<MindSlot> minds;
    std::vector<QubitSymbol> qubits;

    auto operator<=>(const BranchLabel &) const = default;
    bool operator==(const BranchLabel &) const = default;
};

struct Branch {
    BranchLabel label;
    Amplitude amplitude;
    /// Exact |amplitude|^2 when known. Survives tensor, unit-phase unitaries
    /// and erasure; dropped when branches merge.
    std::optional<Rational> exact_weight;
};

inline constexpr double kDefaultTolerance = 1e-12;

/// An amplitude-weighted set of labeled branches in canonical form: sorted by
/// label, no duplicate labels, no entries with |amplitude| below tolerance.
/// Immutable after construction.
class BranchState {
   public:
    BranchState() = default;
    BranchState(LabelSchema schema, std::vector<Branch> branches, double tolerance = kDefaultTolerance);

    LabelSchema schema() const { return schema_; }
    double tolerance() const { return tolerance_; }
    std::span<const Branch> branches() const { return branches_; }
    std::size_t size() const { return branches_.size(); }
    bool empty() const { return branches_.empty(); }

    /// Amplitude of a label, zero when absent.
    Amplitude amplitude(const BranchLabel &label) const;
    const Branch *find(const BranchLabel &label) const;

    double norm_squared() const;
    bool is_normalized() const;

    bool operator==(const BranchState &) const = delete;

   private:
    LabelSchema schema_;
    double tolerance_ = kDefaultTolerance;
    std::vector<Branch> branches_;
};

/// A label-level permutation on one field with optional unit-modulus phases.
/// The rest of the label is left untouched, so the induced operator is
/// unitary whenever the mapping is a bijection; construction enforces that.
class LabelUnitary {
   public:
    struct SystemMap {
        std::map<SystemSymbol, SystemSymbol> mapping;
        std::map<SystemSymbol, Amplitude> phases;
    };
    struct EnvMap {
        std::map<std::string, std::string> mapping;
        std::map<std::string, Amplitude> phases;
    };
    /// New slot i takes old slot permutation[i].
    struct MindPermutation {
        std::vector<std::size_t> permutation;
    };

    explicit LabelUnitary(SystemMap m);
    explicit LabelUnitary(EnvMap m);
    explicit LabelUnitary(MindPermutation m);

    static LabelUnitary swap_system(SystemSymbol a, SystemSymbol b);
    static LabelUnitary swap_env(const std::string &a, const std::string &b);
    static LabelUnitary swap_minds(std::size_t i, std::size_t j, std::size_t n);

    Field field() const;
    /// Rewrites one label; returns the phase to multiply into its amplitude.
    Amplitude rewrite(BranchLabel &label) const;

   private:
    std::variant<SystemMap, EnvMap, MindPermutation> op_;
};

/// Product state. Schemas must be field-wise disjoint.
BranchState tensor(const BranchState &a, const BranchState &b);
BranchState apply(const LabelUnitary &u, const BranchState &s);
/// Rewrites the system field of matching branches to kErased. Throws
/// "non-unitary collision" when two branches would land on the same label.
BranchState erase(const BranchState &s, const std::set<SystemSymbol> &targets);
Amplitude inner_product(const BranchState &a, const BranchState &b);
/// |<a|b>|^2
double fidelity(const BranchState &a, const BranchState &b);

using LabelPredicate = std::function<bool(const BranchLabel &)>;
double measure_of(const BranchState &s, const LabelPredicate &predicate);
/// Exact measure when every contributing branch carries an exact weight.
std::optional<Rational> exact_measure_of(const BranchState &s, const LabelPredicate &predicate);

/// Branch-for-branch identity: same label sets, amplitudes within tolerance.
bool same_branches(const BranchState &a, const BranchState &b, double tolerance = kDefaultTolerance);

/// Single-branch unit states for building product states.
BranchState system_state(std::span<const std::pair<SystemSymbol, Amplitude>> terms);
BranchState unit_state(LabelSchema schema, BranchLabel label);

std::ostream &operator<<(std::ostream &out, const BranchLabel &label);
std::ostream &operator<<(std::ostream &out, const BranchState &s);

}  // namespace bornlab

#endif
