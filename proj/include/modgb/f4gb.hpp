#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "modgb/poly.hpp"

namespace modgb {

/// Buchberger critical pair between basis entries i < j.
struct CriticalPair {
    std::uint32_t i, j;
    Monomial lcm;
    std::uint32_t degree;
};

/// Monomial bookkeeping of one F4 batch. `all_monomials` is the strictly
/// decreasing closure of every monomial an s-poly of the batch can generate;
/// it splits into the reducible monomials (one reductor row each) and the
/// remainder monomials.
struct SymbolicLayout {
    struct Row {
        std::uint32_t basis_index;
        Monomial shift;
    };
    std::vector<Monomial> all_monomials;
    std::vector<Monomial> remainder_monomials;
    std::vector<Monomial> quotient_monomials;
    std::vector<Row> rows;  // decreasing order of lead product
};

/// Sparse reductor matrix over the layout columns. Rows keep a column index
/// list plus the index of the basis element whose coefficient list they
/// share; shifts of the same reductor alias one list.
struct ReductorMatrix {
    static constexpr std::uint32_t npos = 0xffffffffu;

    std::vector<std::uint32_t> row_basis;
    std::vector<std::vector<std::uint32_t>> row_cols;
    std::vector<std::uint32_t> pivot_of_col;
    std::unordered_map<Monomial, std::uint32_t, MonomialHash> col_of;

    std::size_t rows() const { return row_basis.size(); }
    std::size_t cols() const { return pivot_of_col.size(); }
};

/// Row of the dense reduction result, compressed to (column, coefficient)
/// pairs with ascending columns. Empty means the row reduced to zero.
struct SparseRow {
    std::vector<std::uint32_t> cols;
    std::vector<std::uint32_t> coeffs;
    bool zero() const { return cols.empty(); }
};

/// Per-iteration learning data recorded during the first lucky prime run and
/// replayed for later primes: the batch that was reduced, which of its pairs
/// reduced to zero, the symbolic layout, and the leads of the new entries.
struct TraceIteration {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> batch;
    std::vector<std::uint8_t> zero;
    SymbolicLayout layout;
    std::vector<Monomial> new_leads;
};

struct LearningTrace {
    std::vector<TraceIteration> iterations;
};

enum class GBMode { plain, record, replay };

struct IterationStat {
    std::uint32_t degree = 0;
    std::uint32_t pairs = 0;
    std::uint32_t matrix_rows = 0;
    std::uint32_t matrix_cols = 0;
    std::uint32_t new_elements = 0;
    std::uint32_t zero_pairs = 0;
};

struct GBStats {
    std::uint64_t pairs_reduced = 0;
    std::uint64_t pairs_skipped_learning = 0;
    std::uint64_t zero_reductions = 0;
    std::vector<IterationStat> iterations;
};

/// Dense row reduction to reduced echelon form over Z/pZ. Zero columns are
/// compacted away first. Pivot selection scans rows in the given order and
/// never permutes them, so when learning is active the surviving rows appear
/// in the same sequence on every prime; result[i] is input row i after full
/// reduction, empty when it vanished.
std::vector<SparseRow> echelonize(const std::vector<SparseRow>& rows, std::uint32_t ncols,
                                  const PrimeField& field, bool learning_active);

/// Buchberger loop with F4 linear algebra modulo a prime.
class F4Engine {
public:
    explicit F4Engine(PrimeField field, int threads = 1);

    const PrimeField& field() const { return field_; }
    const std::vector<ModPoly>& basis() const { return basis_; }
    const std::vector<std::uint8_t>& alive() const { return alive_; }
    const std::vector<CriticalPair>& pairs() const { return pairs_; }
    bool pairs_pending() const { return !pairs_.empty(); }
    const GBStats& stats() const { return stats_; }

    /// Gebauer-Moller update: appends the monic candidate, creates the
    /// surviving new pairs, prunes old pairs by the chain rule and marks old
    /// entries dead when the new lead divides theirs.
    void update(const ModPoly& candidate);

    /// Removes and returns every pair of minimal degree, ordered by
    /// (lcm descending, then (i,j)). Throws EmptyQueue when no pairs remain.
    std::vector<CriticalPair> select_batch();

    SymbolicLayout symbolic_preprocess(const std::vector<CriticalPair>& batch) const;

    ReductorMatrix build_matrix(const SymbolicLayout& layout) const;

    /// Expands each pair's s-poly as a dense vector over the layout columns
    /// and reduces it against the matrix top-down with delayed modular
    /// reduction. Rows are independent; with threads > 1 they run under
    /// OpenMP, otherwise on a serial reference path with identical output.
    std::vector<SparseRow> reduce_batch(const std::vector<CriticalPair>& batch,
                                        const ReductorMatrix& matrix) const;

    ModPoly row_to_poly(const SparseRow& row, const SymbolicLayout& layout) const;

    /// One full F4 iteration in the given mode; returns false when the pair
    /// queue was empty (main-loop termination).
    bool step(GBMode mode, LearningTrace* record, const LearningTrace* replay);

    /// Reduced basis: tails reduced against the other alive leads, monic,
    /// sorted descending by leading monomial.
    std::vector<ModPoly> reduced_basis() const;

private:
    PrimeField field_;
    int threads_;
    std::vector<ModPoly> basis_;
    std::vector<std::uint8_t> alive_;
    std::vector<CriticalPair> pairs_;
    std::uint32_t iteration_ = 0;
    GBStats stats_;
};

struct GBRunOutput {
    std::vector<ModPoly> basis;
    GBStats stats;
    LearningTrace trace;  // filled in record mode
};

/// Computes the unique reduced monic Groebner basis of the generators mod p.
/// record mode also returns a LearningTrace; replay mode skips pairs the
/// trace marked zero-reducing and reuses its layouts, throwing
/// ReplayMismatch when the trace does not fit this prime.
GBRunOutput gbasis_modp(const std::vector<ModPoly>& generators, const PrimeField& field,
                        GBMode mode = GBMode::plain, const LearningTrace* trace = nullptr,
                        int threads = 1);

}  // namespace modgb
