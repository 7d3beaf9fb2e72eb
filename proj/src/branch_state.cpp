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

#include "bornlab/branch_state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bornlab {

namespace {

bool amplitude_less(const Amplitude &a, const Amplitude &b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

BranchLabel combine(const BranchLabel &a, LabelSchema sa, const BranchLabel &b, LabelSchema sb) {
    BranchLabel out;
    out.system = sa.has(Field::System) ? a.system : b.system;
    out.env = sa.has(Field::Env) ? a.env : b.env;
    out.minds = sa.has(Field::Minds) ? a.minds : b.minds;
    out.qubits = sa.has(Field::Qubits) ? a.qubits : b.qubits;
    (void)sb;
    return out;
}

}  // namespace

BranchState::BranchState(LabelSchema schema, std::vector<Branch> branches, double tolerance)
    : schema_(schema), tolerance_(tolerance) {
    for (const auto &b : branches) {
        if (!std::isfinite(b.amplitude.real()) || !std::isfinite(b.amplitude.imag())) {
            throw Error("non-finite amplitude");
        }
    }
    // Ties on label are ordered by amplitude so that the merged sum does not
    // depend on insertion order.
    std::sort(branches.begin(), branches.end(), [](const Branch &x, const Branch &y) {
        if (auto c = x.label <=> y.label; c != 0) return c < 0;
        return amplitude_less(x.amplitude, y.amplitude);
    });
    branches_.reserve(branches.size());
    for (std::size_t i = 0; i < branches.size();) {
        std::size_t j = i + 1;
        Branch merged = std::move(branches[i]);
        while (j < branches.size() && branches[j].label == merged.label) {
            merged.amplitude += branches[j].amplitude;
            merged.exact_weight.reset();
            ++j;
        }
        if (std::abs(merged.amplitude) >= tolerance_) {
            branches_.push_back(std::move(merged));
        }
        i = j;
    }
}

const Branch *BranchState::find(const BranchLabel &label) const {
    auto it = std::lower_bound(branches_.begin(), branches_.end(), label,
                               [](const Branch &b, const BranchLabel &l) { return b.label < l; });
    if (it != branches_.end() && it->label == label) return &*it;
    return nullptr;
}

Amplitude BranchState::amplitude(const BranchLabel &label) const {
    const Branch *b = find(label);
    return b ? b->amplitude : Amplitude{};
}

double BranchState::norm_squared() const {
    double total = 0;
    for (const auto &b : branches_) total += std::norm(b.amplitude);
    return total;
}

bool BranchState::is_normalized() const {
    return std::abs(norm_squared() - 1.0) < tolerance_;
}

LabelUnitary::LabelUnitary(SystemMap m) {
    std::set<SystemSymbol> keys, values;
    for (const auto &[k, v] : m.mapping) {
        keys.insert(k);
        values.insert(v);
    }
    if (keys != values) {
        throw Error("label mapping is not a bijection");
    }
    for (const auto &[k, p] : m.phases) {
        if (std::abs(std::abs(p) - 1.0) > kDefaultTolerance) {
            throw Error("label phase must have unit modulus");
        }
    }
    op_ = std::move(m);
}

LabelUnitary::LabelUnitary(EnvMap m) {
    std::set<std::string> keys, values;
    for (const auto &[k, v] : m.mapping) {
        keys.insert(k);
        values.insert(v);
    }
    if (keys != values) {
        throw Error("label mapping is not a bijection");
    }
    for (const auto &[k, p] : m.phases) {
        if (std::abs(std::abs(p) - 1.0) > kDefaultTolerance) {
            throw Error("label phase must have unit modulus");
        }
    }
    op_ = std::move(m);
}

LabelUnitary::LabelUnitary(MindPermutation m) {
    std::vector<std::size_t> sorted = m.permutation;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] != i) {
            throw Error("label mapping is not a bijection");
        }
    }
    op_ = std::move(m);
}

LabelUnitary LabelUnitary::swap_system(SystemSymbol a, SystemSymbol b) {
    SystemMap m;
    m.mapping[a] = b;
    m.mapping[b] = a;
    return LabelUnitary(std::move(m));
}

LabelUnitary LabelUnitary::swap_env(const std::string &a, const std::string &b) {
    EnvMap m;
    m.mapping[a] = b;
    m.mapping[b] = a;
    return LabelUnitary(std::move(m));
}

LabelUnitary LabelUnitary::swap_minds(std::size_t i, std::size_t j, std::size_t n) {
    MindPermutation m;
    m.permutation.resize(n);
    std::iota(m.permutation.begin(), m.permutation.end(), std::size_t{0});
    std::swap(m.permutation.at(i), m.permutation.at(j));
    return LabelUnitary(std::move(m));
}

Field LabelUnitary::field() const {
    switch (op_.index()) {
        case 0:
            return Field::System;
        case 1:
            return Field::Env;
        default:
            return Field::Minds;
    }
}

Amplitude LabelUnitary::rewrite(BranchLabel &label) const {
    Amplitude phase{1.0, 0.0};
    if (const auto *m = std::get_if<SystemMap>(&op_)) {
        if (auto p = m->phases.find(label.system); p != m->phases.end()) phase = p->second;
        if (auto it = m->mapping.find(label.system); it != m->mapping.end()) label.system = it->second;
    } else if (const auto *e = std::get_if<EnvMap>(&op_)) {
        if (auto p = e->phases.find(label.env); p != e->phases.end()) phase = p->second;
        if (auto it = e->mapping.find(label.env); it != e->mapping.end()) label.env = it->second;
    } else {
        const auto &perm = std::get<MindPermutation>(op_).permutation;
        if (perm.size() != label.minds.size()) {
            throw Error("mind permutation size does not match label");
        }
        std::vector<MindSlot> permuted(perm.size());
        for (std::size_t i = 0; i < perm.size(); ++i) permuted[i] = label.minds[perm[i]];
        label.minds = std::move(permuted);
    }
    return phase;
}

BranchState tensor(const BranchState &a, const BranchState &b) {
    if (!a.schema().disjoint(b.schema())) {
        throw Error("incompatible label schemas");
    }
    std::vector<Branch> out;
    out.reserve(a.size() * b.size());
    for (const auto &x : a.branches()) {
        for (const auto &y : b.branches()) {
            Branch br;
            br.label = combine(x.label, a.schema(), y.label, b.schema());
            br.amplitude = x.amplitude * y.amplitude;
            if (x.exact_weight && y.exact_weight) br.exact_weight = *x.exact_weight * *y.exact_weight;
            out.push_back(std::move(br));
        }
    }
    return BranchState(a.schema() | b.schema(), std::move(out), std::min(a.tolerance(), b.tolerance()));
}

BranchState apply(const LabelUnitary &u, const BranchState &s) {
    if (!s.schema().has(u.field())) {
        throw Error("unitary acts on a field absent from the state");
    }
    std::vector<Branch> out(s.branches().begin(), s.branches().end());
    for (auto &b : out) {
        b.amplitude *= u.rewrite(b.label);
    }
    return BranchState(s.schema(), std::move(out), s.tolerance());
}

BranchState erase(const BranchState &s, const std::set<SystemSymbol> &targets) {
    if (!s.schema().has(Field::System)) {
        throw Error("erasure requires a system field");
    }
    std::vector<Branch> out(s.branches().begin(), s.branches().end());
    for (auto &b : out) {
        if (targets.contains(b.label.system)) b.label.system = kErased;
    }
    std::vector<const BranchLabel *> labels;
    labels.reserve(out.size());
    for (const auto &b : out) labels.push_back(&b.label);
    std::sort(labels.begin(), labels.end(), [](const BranchLabel *x, const BranchLabel *y) { return *x < *y; });
    for (std::size_t i = 1; i < labels.size(); ++i) {
        if (*labels[i] == *labels[i - 1]) {
            throw Error("non-unitary collision");
        }
    }
    return BranchState(s.schema(), std::move(out), s.tolerance());
}

Amplitude inner_product(const BranchState &a, const BranchState &b) {
    if (a.schema() != b.schema()) {
        throw Error("label schema mismatch");
    }
    Amplitude total{};
    auto ia = a.branches().begin();
    auto ib = b.branches().begin();
    while (ia != a.branches().end() && ib != b.branches().end()) {
        auto c = ia->label <=> ib->label;
        if (c < 0) {
            ++ia;
        } else if (c > 0) {
            ++ib;
        } else {
            total += std::conj(ia->amplitude) * ib->amplitude;
            ++ia;
            ++ib;
        }
    }
    return total;
}

double fidelity(const BranchState &a, const BranchState &b) {
    return std::norm(inner_product(a, b));
}

double measure_of(const BranchState &s, const LabelPredicate &predicate) {
    double total = 0;
    for (const auto &b : s.branches()) {
        if (predicate(b.label)) total += std::norm(b.amplitude);
    }
    return total;
}

std::optional<Rational> exact_measure_of(const BranchState &s, const LabelPredicate &predicate) {
    Rational total = 0;
    for (const auto &b : s.branches()) {
        if (!predicate(b.label)) continue;
        if (!b.exact_weight) return std::nullopt;
        total += *b.exact_weight;
    }
    return total;
}

bool same_branches(const BranchState &a, const BranchState &b, double tolerance) {
    if (a.schema() != b.schema() || a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto &x = a.branches()[i];
        const auto &y = b.branches()[i];
        if (!(x.label == y.label) || std::abs(x.amplitude - y.amplitude) >= tolerance) return false;
    }
    return true;
}

BranchState system_state(std::span<const std::pair<SystemSymbol, Amplitude>> terms) {
    std::vector<Branch> out;
    for (const auto &[sym, amp] : terms) {
        Branch b;
        b.label.system = sym;
        b.amplitude = amp;
        out.push_back(std::move(b));
    }
    return BranchState(LabelSchema{Field::System}, std::move(out));
}

BranchState unit_state(LabelSchema schema, BranchLabel label) {
    std::vector<Branch> out;
    out.push_back(Branch{std::move(label), Amplitude{1.0, 0.0}, Rational(1)});
    return BranchState(schema, std::move(out));
}

std::ostream &operator<<(std::ostream &out, const BranchLabel &label) {
    out << '(';
    if (label.system == kErased) {
        out << "0";
    } else {
        out << label.system;
    }
    out << ',' << (label.env.empty() ? "-" : label.env) << ",[";
    for (std::size_t i = 0; i < label.minds.size(); ++i) {
        if (i) out << ' ';
        const auto &m = label.minds[i];
        switch (m.kind) {
            case MindSlot::Kind::Ready:
                out << 'R';
                break;
            case MindSlot::Kind::Aware:
                out << 'A' << m.outcome;
                break;
            case MindSlot::Kind::Empty:
                out << 'E';
                break;
        }
    }
    out << "],[";
    for (std::size_t i = 0; i < label.qubits.size(); ++i) {
        if (i) out << ' ';
        out << label.qubits[i];
    }
    return out << "])";
}

std::ostream &operator<<(std::ostream &out, const BranchState &s) {
    out << '{';
    bool first = true;
    for (const auto &b : s.branches()) {
        if (!first) out << ", ";
        first = false;
        out << b.label << ": " << b.amplitude.real();
        if (b.amplitude.imag() != 0) out << (b.amplitude.imag() < 0 ? "-" : "+") << std::abs(b.amplitude.imag()) << 'i';
    }
    return out << '}';
}

}  // namespace bornlab
