#include "conewave/index_sets.hpp"
#include "conewave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

namespace conewave {

namespace {
constexpr double kZTol = 1e-9;

bool z_equal(double a, double b) { return std::abs(a - b) <= kZTol; }

// Map exponent -> max log power, merging exponents within tolerance.
std::map<double, int> kmax_map(const std::vector<IndexEntry>& entries) {
    std::map<double, int> m;
    for (const auto& e : entries) {
        auto it = m.lower_bound(e.z - kZTol);
        if (it != m.end() && z_equal(it->first, e.z)) {
            it->second = std::max(it->second, e.k);
        } else {
            m.emplace(e.z, e.k);
        }
    }
    return m;
}
} // namespace

void IndexSet::insert(double z, int k) {
    if (z > cutoff_ + kZTol) return;
    entries_.push_back({z, k});
}

void IndexSet::sort_and_merge() {
    std::sort(entries_.begin(), entries_.end(), [](const IndexEntry& a, const IndexEntry& b) {
        if (a.z != b.z) return a.z < b.z;
        return a.k < b.k;
    });
    std::vector<IndexEntry> merged;
    for (const auto& e : entries_) {
        if (!merged.empty() && z_equal(merged.back().z, e.z) && merged.back().k == e.k) continue;
        merged.push_back(e);
    }
    entries_ = std::move(merged);
}

IndexSet IndexSet::from_entries(std::vector<IndexEntry> entries, double cutoff) {
    IndexSet s(cutoff);
    for (const auto& e : entries) {
        if (e.k < 0) throw invalid_parameter("IndexSet: log power must be nonnegative");
        s.insert(e.z, e.k);
    }
    s.sort_and_merge();
    return s;
}

IndexSet IndexSet::natural(double z0, double cutoff) {
    IndexSet s(cutoff);
    for (double z = z0; z <= cutoff + kZTol; z += 1.0) s.insert(z, 0);
    s.sort_and_merge();
    return s;
}

bool IndexSet::contains(double z, int k) const {
    for (const auto& e : entries_) {
        if (z_equal(e.z, z) && e.k == k) return true;
    }
    return false;
}

bool IndexSet::validate() const {
    for (const auto& e : entries_) {
        if (e.k >= 1 && !contains(e.z, e.k - 1)) return false;
        if (e.z + 1.0 <= cutoff_ + kZTol && !contains(e.z + 1.0, e.k)) return false;
    }
    return true;
}

double IndexSet::inf() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& e : entries_) {
        if (e.k == 0) m = std::min(m, e.z);
    }
    return m;
}

double IndexSet::re_min() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& e : entries_) m = std::min(m, e.z);
    return m;
}

IndexSet IndexSet::closure_completed() const {
    IndexSet out(cutoff_);
    for (const auto& [z, kmax] : kmax_map(entries_)) {
        for (double zz = z; zz <= cutoff_ + kZTol; zz += 1.0) {
            for (int k = 0; k <= kmax; ++k) out.insert(zz, k);
        }
    }
    out.sort_and_merge();
    return out;
}

IndexSet IndexSet::shifted(int j) const {
    IndexSet out(cutoff_);
    for (const auto& e : entries_) out.insert(e.z + j, e.k);
    out.sort_and_merge();
    return out;
}

std::string IndexSet::to_string() const {
    std::string out;
    char buf[64];
    for (const auto& [z, kmax] : kmax_map(entries_)) {
        std::snprintf(buf, sizeof(buf), "%.9g^{", z);
        out += buf;
        for (int k = 0; k <= kmax; ++k) {
            std::snprintf(buf, sizeof(buf), k == 0 ? "%d" : ",%d", k);
            out += buf;
        }
        out += "}\n";
    }
    if (out.empty()) out = "(empty)\n";
    return out;
}

bool same_entries(const IndexSet& a, const IndexSet& b) {
    const auto ma = kmax_map(a.entries_);
    const auto mb = kmax_map(b.entries_);
    if (ma.size() != mb.size()) return false;
    auto ia = ma.begin();
    auto ib = mb.begin();
    for (; ia != ma.end(); ++ia, ++ib) {
        if (!z_equal(ia->first, ib->first) || ia->second != ib->second) return false;
    }
    return true;
}

namespace {
void check_cutoffs(const IndexSet& a, const IndexSet& b, const char* op) {
    if (std::abs(a.cutoff() - b.cutoff()) > kZTol) {
        throw invalid_parameter(std::string("index_sets.") + op + ": mismatched cutoffs");
    }
}

// Union plus collision terms (z, k1+k2+1), no closure completion.
IndexSet ext_union_literal(const IndexSet& a, const IndexSet& b) {
    IndexSet out = IndexSet::from_entries({}, a.cutoff());
    std::vector<IndexEntry> all;
    for (const auto& e : a.entries()) all.push_back(e);
    for (const auto& e : b.entries()) all.push_back(e);
    const auto ka = kmax_map(a.entries());
    const auto kb = kmax_map(b.entries());
    for (const auto& [z, kmaxa] : ka) {
        auto it = kb.lower_bound(z - kZTol);
        if (it != kb.end() && z_equal(it->first, z)) {
            all.push_back({z, kmaxa + it->second + 1});
        }
    }
    out = IndexSet::from_entries(all, a.cutoff());
    return out;
}
} // namespace

IndexSet add(const IndexSet& a, const IndexSet& b) {
    check_cutoffs(a, b, "add");
    // Closure-completing the operands first keeps the algebra associative;
    // on closed sets the literal operation is itself closed.
    const IndexSet ac = a.closure_completed();
    const IndexSet bc = b.closure_completed();
    IndexSet out(a.cutoff());
    for (const auto& ea : ac.entries()) {
        for (const auto& eb : bc.entries()) {
            out.insert(ea.z + eb.z, ea.k + eb.k);
        }
    }
    out.sort_and_merge();
    return out.closure_completed();
}

IndexSet ext_union(const IndexSet& a, const IndexSet& b) {
    check_cutoffs(a, b, "ext_union");
    return ext_union_literal(a.closure_completed(), b.closure_completed()).closure_completed();
}

IndexSet hat(const IndexSet& e) {
    IndexSet acc = e;
    const double base = e.re_min();
    if (e.empty()) return e;
    for (int i = 1; base + i <= e.cutoff() + kZTol; ++i) {
        acc = ext_union_literal(acc, e.shifted(i));
    }
    return acc.closure_completed();
}

IndexFamily compose(const IndexFamily& e, const IndexFamily& f) {
    const double re = e.rb.re_min() + f.lb.re_min();
    if (!(re > 0.0)) {
        throw invalid_parameter(
            "index_sets.compose: composition undefined, Re(E_rb + F_lb) <= 0");
    }
    IndexFamily g;
    g.lb = ext_union(add(e.bf, f.lb), e.lb);
    g.rb = ext_union(add(e.rb, f.bf), f.rb);
    g.bf = ext_union(add(e.bf, f.bf), add(e.lb, f.rb));
    g.bf0 = add(e.bf0, f.bf0);
    return g;
}

ParametrixFamily parametrix_family(const IndexSet& eb) {
    ParametrixFamily p;
    p.hat_set = hat(eb);
    p.check_set = ext_union(p.hat_set, p.hat_set);
    IndexSet zero = IndexSet::from_entries({{0.0, 0}}, eb.cutoff());
    IndexSet n0p1 = IndexSet::natural(1.0, eb.cutoff());
    IndexSet inner = ext_union(n0p1, add(p.hat_set, p.check_set));
    // {(0,0)} u (...) : a plain union of entries, then closed.
    std::vector<IndexEntry> ent = inner.entries();
    ent.push_back({0.0, 0});
    p.tilde_set = IndexSet::from_entries(ent, eb.cutoff()).closure_completed();
    return p;
}

} // namespace conewave
