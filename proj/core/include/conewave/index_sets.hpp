#ifndef CONEWAVE_INDEX_SETS_HPP
#define CONEWAVE_INDEX_SETS_HPP

#include <string>
#include <vector>

namespace conewave {

// One term x^z (log x)^k of a polyhomogeneous expansion.
struct IndexEntry {
    double z = 0.0;
    int k = 0;
};

// A finite truncation of a polyhomogeneous index set: the stored entries are
// the terms with exponent <= cutoff; everything above the cutoff is implied
// by the closure axioms and not stored.  Exponents within 1e-9 are merged.
class IndexSet {
public:
    IndexSet() = default;
    explicit IndexSet(double cutoff) : cutoff_(cutoff) {}

    // Stores the given entries verbatim (no closure completion); invalid
    // combinations are representable so that validate() has work to do.
    static IndexSet from_entries(std::vector<IndexEntry> entries, double cutoff);

    // z0 + N0 ladder with k = 0 (the "smooth" set starting at z0).
    static IndexSet natural(double z0, double cutoff);

    double cutoff() const { return cutoff_; }
    bool empty() const { return entries_.empty(); }
    const std::vector<IndexEntry>& entries() const { return entries_; }

    bool contains(double z, int k) const;

    // Closure axioms on the stored entries:
    //   (z, k) present, k >= 1  =>  (z, k-1) present
    //   (z, k) present, z+1 <= cutoff  =>  (z+1, k) present
    bool validate() const;

    // inf E = min { z : (z, 0) in E };  +infinity for the empty set.
    double inf() const;
    // Re E = min { z : (z, k) in E for some k };  +infinity for the empty set.
    double re_min() const;

    // Adds all k-lowering and integer-shift consequences below the cutoff.
    IndexSet closure_completed() const;
    // Entries shifted by the integer j (exponents above cutoff dropped).
    IndexSet shifted(int j) const;

    // Pretty print, one exponent per line as "z^{k-list}".
    std::string to_string() const;

    friend bool same_entries(const IndexSet& a, const IndexSet& b);

private:
    friend IndexSet add(const IndexSet&, const IndexSet&);
    friend IndexSet ext_union(const IndexSet&, const IndexSet&);
    friend IndexSet hat(const IndexSet&);

    void insert(double z, int k);
    void sort_and_merge();

    double cutoff_ = 6.0;
    std::vector<IndexEntry> entries_;
};

// E1 + E2 = {(z1+z2, k1+k2)}; result closure-completed and truncated.
IndexSet add(const IndexSet& a, const IndexSet& b);

// E1 extended-union E2 = E1 u E2 u {(z, k1+k2+1) : (z,k1) in E1, (z,k2) in E2};
// result closure-completed and truncated.
IndexSet ext_union(const IndexSet& a, const IndexSet& b);

// hat(E) = extended union of E + i over i in N0, folded shift by shift until
// the increments leave the cutoff window.  Collisions are computed on the
// stored entries, so E should carry the generating exponents (e.g. the
// indicial roots), not a pre-completed ladder.
IndexSet hat(const IndexSet& e);

// The boundary index family of a four-face composition (lb, rb, bf, bf0).
struct IndexFamily {
    IndexSet lb, rb, bf, bf0;
};

// Composition of index families:
//   G_lb  = (E_bf + F_lb) u- E_lb
//   G_rb  = (E_rb + F_bf) u- F_rb
//   G_bf  = (E_bf + F_bf) u- (E_lb + F_rb)
//   G_bf0 = E_bf0 + F_bf0
// Requires Re(E_rb + F_lb) > 0; throws invalid_parameter otherwise.
IndexFamily compose(const IndexFamily& e, const IndexFamily& f);

// The parametrix triple (hat E_b, check E_b = hat u- hat, tilde E_b).
struct ParametrixFamily {
    IndexSet hat_set;   // union over shifts
    IndexSet check_set; // hat u- hat
    IndexSet tilde_set; // {(0,0)} u ((N0+1) u- (hat + check))
};

ParametrixFamily parametrix_family(const IndexSet& eb);

} // namespace conewave

#endif
