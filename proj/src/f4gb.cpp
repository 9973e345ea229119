#include "modgb/f4gb.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cassert>

namespace modgb {

namespace {
constexpr std::uint32_t npos = ReductorMatrix::npos;
}

F4Engine::F4Engine(PrimeField field, int threads)
    : field_(field), threads_(threads < 1 ? 1 : threads) {}

void F4Engine::update(const ModPoly& h) {
    assert(!h.zero());
    assert(h.lead_coeff() == 1);
    const std::uint32_t idx = static_cast<std::uint32_t>(basis_.size());
    const Monomial& t = h.lead_mono();

    struct Cand {
        std::uint32_t g;
        Monomial l;
        bool coprime_lead;
    };
    std::vector<Cand> cands;
    cands.reserve(idx);
    for (std::uint32_t g = 0; g < idx; ++g) {
        if (!alive_[g]) continue;
        const Monomial& lg = basis_[g].lead_mono();
        cands.push_back({g, lcm(lg, t), coprime(lg, t)});
    }

    // Gebauer-Moller among the new pairs: a non-coprime candidate is dropped
    // when another candidate (still unprocessed, or already kept) has an lcm
    // dividing its own; coprime candidates survive this stage so they can
    // knock others out, and are discarded afterwards by Buchberger's first
    // criterion.
    std::vector<char> kept(cands.size(), 0);
    for (std::size_t a = 0; a < cands.size(); ++a) {
        bool drop = false;
        if (!cands[a].coprime_lead) {
            for (std::size_t b = 0; b < cands.size(); ++b) {
                if (b == a) continue;
                const bool considered = b > a || kept[b];
                if (considered && divides(cands[b].l, cands[a].l)) {
                    drop = true;
                    break;
                }
            }
        }
        kept[a] = !drop;
    }

    // chain rule on old pairs: drop (i,j) when the new lead divides its lcm
    // strictly (neither lcm(i,new) nor lcm(new,j) equals it)
    std::erase_if(pairs_, [&](const CriticalPair& pr) {
        if (!divides(t, pr.lcm)) return false;
        if (lcm(basis_[pr.i].lead_mono(), t) == pr.lcm) return false;
        if (lcm(t, basis_[pr.j].lead_mono()) == pr.lcm) return false;
        return true;
    });

    for (std::size_t a = 0; a < cands.size(); ++a) {
        if (!kept[a] || cands[a].coprime_lead) continue;
        pairs_.push_back({cands[a].g, idx, cands[a].l, cands[a].l.degree()});
    }

    for (std::uint32_t g = 0; g < idx; ++g)
        if (alive_[g] && divides(t, basis_[g].lead_mono())) alive_[g] = 0;

    basis_.push_back(h);
    alive_.push_back(1);
}

std::vector<CriticalPair> F4Engine::select_batch() {
    if (pairs_.empty()) throw EmptyQueue("critical pair queue is empty");
    std::uint32_t dmin = pairs_.front().degree;
    for (const auto& pr : pairs_) dmin = std::min(dmin, pr.degree);

    std::vector<CriticalPair> batch;
    std::vector<CriticalPair> rest;
    rest.reserve(pairs_.size());
    for (auto& pr : pairs_) {
        if (pr.degree == dmin)
            batch.push_back(pr);
        else
            rest.push_back(pr);
    }
    pairs_ = std::move(rest);

    std::sort(batch.begin(), batch.end(), [](const CriticalPair& a, const CriticalPair& b) {
        const auto c = cmp_degrevlex(a.lcm, b.lcm);
        if (c != std::strong_ordering::equal) return c == std::strong_ordering::greater;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    return batch;
}

SymbolicLayout F4Engine::symbolic_preprocess(const std::vector<CriticalPair>& batch) const {
    SymbolicLayout out;
    ChainedMonoHeap<std::uint8_t> todo;

    const auto seed_tail = [&](std::uint32_t gi, const Monomial& shift) {
        const ModPoly& g = basis_[gi];
        for (std::size_t t = 1; t < g.size(); ++t) todo.push(mul(shift, g.mono(t)), 0);
    };
    for (const auto& pr : batch) {
        seed_tail(pr.i, *try_divide(pr.lcm, basis_[pr.i].lead_mono()));
        seed_tail(pr.j, *try_divide(pr.lcm, basis_[pr.j].lead_mono()));
    }

    // Closure: each pending monomial is either reducible (first alive basis
    // element whose lead divides it becomes its reductor, and the shifted
    // tail joins the pending set) or a remainder monomial. Everything pushed
    // after a pop is strictly smaller, so each monomial is handled once.
    std::vector<std::uint8_t> sink;
    while (!todo.empty()) {
        sink.clear();
        const Monomial m = todo.pop(sink);
        out.all_monomials.push_back(m);
        bool reduced = false;
        for (std::size_t g = 0; g < basis_.size(); ++g) {
            if (!alive_[g]) continue;
            if (auto q = try_divide(m, basis_[g].lead_mono())) {
                out.rows.push_back({static_cast<std::uint32_t>(g), *q});
                out.quotient_monomials.push_back(*q);
                seed_tail(static_cast<std::uint32_t>(g), *q);
                reduced = true;
                break;
            }
        }
        if (!reduced) out.remainder_monomials.push_back(m);
    }
    return out;
}

ReductorMatrix F4Engine::build_matrix(const SymbolicLayout& layout) const {
    ReductorMatrix mx;
    const std::uint32_t ncols = static_cast<std::uint32_t>(layout.all_monomials.size());
    mx.pivot_of_col.assign(ncols, npos);
    mx.col_of.reserve(2 * ncols);
    for (std::uint32_t c = 0; c < ncols; ++c) mx.col_of.emplace(layout.all_monomials[c], c);

    mx.row_basis.reserve(layout.rows.size());
    mx.row_cols.reserve(layout.rows.size());
    for (const auto& rd : layout.rows) {
        if (rd.basis_index >= basis_.size() || !alive_[rd.basis_index])
            throw ReplayMismatch("reductor row references a dead basis entry");
        const ModPoly& g = basis_[rd.basis_index];
        std::vector<std::uint32_t> cols(g.size());
        for (std::size_t t = 0; t < g.size(); ++t) {
            const auto it = mx.col_of.find(mul(rd.shift, g.mono(t)));
            if (it == mx.col_of.end())
                throw ReplayMismatch("reductor monomial missing from layout");
            cols[t] = it->second;
        }
        const std::uint32_t row = static_cast<std::uint32_t>(mx.row_basis.size());
        if (mx.pivot_of_col[cols[0]] != npos)
            throw ReplayMismatch("duplicate reductor lead column");
        mx.pivot_of_col[cols[0]] = row;
        mx.row_basis.push_back(rd.basis_index);
        mx.row_cols.push_back(std::move(cols));
    }
    return mx;
}

namespace {

/// One s-poly dense row: expand u_i*g_i - u_j*g_j over the layout columns,
/// then run the top-down sparse reduction with delayed modular reduction.
template <class Acc>
bool reduce_spoly_row(const PrimeField& field, const std::vector<ModPoly>& basis,
                      const CriticalPair& pr, const ReductorMatrix& mx,
                      std::vector<typename Acc::Value>& acc, SparseRow& out) {
    const std::uint32_t p = field.modulus();
    const std::uint32_t ncols = static_cast<std::uint32_t>(mx.pivot_of_col.size());
    acc.assign(ncols, 0);

    const auto scatter = [&](std::uint32_t gi, const Monomial& shift, bool negated) {
        const ModPoly& g = basis[gi];
        for (std::size_t t = 0; t < g.size(); ++t) {
            const auto it = mx.col_of.find(mul(shift, g.mono(t)));
            if (it == mx.col_of.end()) return false;
            Acc::add_product(acc[it->second], negated ? p - g.coeff(t) : g.coeff(t), 1);
        }
        return true;
    };
    if (!scatter(pr.i, *try_divide(pr.lcm, basis[pr.i].lead_mono()), false)) return false;
    if (!scatter(pr.j, *try_divide(pr.lcm, basis[pr.j].lead_mono()), true)) return false;

    std::uint64_t applied = 2;
    for (std::uint32_t col = 0; col < ncols; ++col) {
        const std::uint32_t c = Acc::reduce(acc[col], p);
        if (c == 0) {
            acc[col] = 0;
            continue;
        }
        const std::uint32_t r = mx.pivot_of_col[col];
        if (r == npos) {
            acc[col] = c;  // remainder column, now canonical
            continue;
        }
        const std::uint32_t mult = p - c;
        const auto& cols = mx.row_cols[r];
        const auto& coeffs = basis[mx.row_basis[r]].coeffs();
        for (std::size_t t = 1; t < cols.size(); ++t)
            Acc::add_product(acc[cols[t]], mult, coeffs[t]);
        acc[col] = 0;  // the monic lead cancels exactly
        if (++applied >= Acc::addend_budget) {
            for (std::uint32_t k = col + 1; k < ncols; ++k) Acc::normalize(acc[k], p);
            applied = 1;
        }
    }

    out.cols.clear();
    out.coeffs.clear();
    for (std::uint32_t col = 0; col < ncols; ++col) {
        if (acc[col] != 0) {
            out.cols.push_back(col);
            out.coeffs.push_back(static_cast<std::uint32_t>(acc[col]));
        }
    }
    return true;
}

template <class Acc>
void reduce_rows(const PrimeField& field, const std::vector<ModPoly>& basis,
                 const std::vector<CriticalPair>& batch, const ReductorMatrix& mx,
                 std::vector<SparseRow>& rows, int threads) {
    if (threads <= 1) {
        // serial reference path, kept free of OpenMP
        std::vector<typename Acc::Value> acc;
        for (std::size_t r = 0; r < batch.size(); ++r) {
            if (!reduce_spoly_row<Acc>(field, basis, batch[r], mx, acc, rows[r]))
                throw ReplayMismatch("s-poly monomial missing from recorded layout");
        }
        return;
    }
    std::atomic<bool> mismatch{false};
#pragma omp parallel num_threads(threads)
    {
        std::vector<typename Acc::Value> acc;
#pragma omp for schedule(dynamic)
        for (long r = 0; r < static_cast<long>(batch.size()); ++r) {
            if (mismatch.load(std::memory_order_relaxed)) continue;
            if (!reduce_spoly_row<Acc>(field, basis, batch[static_cast<std::size_t>(r)], mx, acc,
                                       rows[static_cast<std::size_t>(r)]))
                mismatch.store(true, std::memory_order_relaxed);
        }
    }
    if (mismatch.load()) throw ReplayMismatch("s-poly monomial missing from recorded layout");
}

}  // namespace

std::vector<SparseRow> F4Engine::reduce_batch(const std::vector<CriticalPair>& batch,
                                              const ReductorMatrix& matrix) const {
    std::vector<SparseRow> rows(batch.size());
    if (field_.modulus() < (1u << 24))
        reduce_rows<Signed63Accumulator>(field_, basis_, batch, matrix, rows, threads_);
    else
        reduce_rows<Wide128Accumulator>(field_, basis_, batch, matrix, rows, threads_);
    return rows;
}

std::vector<SparseRow> echelonize(const std::vector<SparseRow>& rows, std::uint32_t ncols,
                                  const PrimeField& field, bool learning_active) {
    // Pivot selection scans rows in the given order on every path, which is
    // exactly what learning requires: surviving rows keep their sequence.
    (void)learning_active;
    const std::uint32_t p = field.modulus();

    // drop zero columns first
    std::vector<std::uint32_t> used;
    for (const auto& r : rows)
        used.insert(used.end(), r.cols.begin(), r.cols.end());
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    std::vector<std::uint32_t> compact(ncols, npos);
    for (std::uint32_t k = 0; k < used.size(); ++k) compact[used[k]] = k;
    const std::uint32_t nc = static_cast<std::uint32_t>(used.size());

    std::vector<std::vector<std::uint32_t>> pivrows;
    std::vector<std::uint32_t> pivot_of(nc, npos);
    std::vector<std::int64_t> result_of(rows.size(), -1);
    std::vector<unsigned __int128> buf(nc);

    for (std::size_t idx = 0; idx < rows.size(); ++idx) {
        const SparseRow& in = rows[idx];
        if (in.zero()) continue;
        std::fill(buf.begin(), buf.end(), 0);
        for (std::size_t t = 0; t < in.cols.size(); ++t) buf[compact[in.cols[t]]] = in.coeffs[t];

        std::int64_t lead = -1;
        for (std::uint32_t c = 0; c < nc; ++c) {
            const std::uint32_t v = static_cast<std::uint32_t>(buf[c] % p);
            if (v == 0) continue;
            const std::uint32_t pr = pivot_of[c];
            if (pr == npos) {
                lead = c;
                break;
            }
            const std::uint64_t mult = p - v;
            const auto& prow = pivrows[pr];
            for (std::uint32_t k = c; k < nc; ++k)
                if (prow[k]) buf[k] += static_cast<unsigned __int128>(mult) * prow[k];
        }
        if (lead < 0) continue;

        std::vector<std::uint32_t> nr(nc, 0);
        const std::uint32_t v = static_cast<std::uint32_t>(buf[lead] % p);
        const std::uint32_t inv = field.inv(v);
        for (std::uint32_t k = static_cast<std::uint32_t>(lead); k < nc; ++k) {
            const std::uint32_t x = static_cast<std::uint32_t>(buf[k] % p);
            nr[k] = field.mul(x, inv);
        }
        pivot_of[static_cast<std::uint32_t>(lead)] = static_cast<std::uint32_t>(pivrows.size());
        result_of[idx] = static_cast<std::int64_t>(pivrows.size());
        pivrows.push_back(std::move(nr));
    }

    // back substitution, rightmost pivot first, for the reduced echelon form
    for (std::int64_t c = static_cast<std::int64_t>(nc) - 1; c >= 0; --c) {
        const std::uint32_t pr = pivot_of[static_cast<std::uint32_t>(c)];
        if (pr == npos) continue;
        auto& row = pivrows[pr];
        for (std::uint32_t k = static_cast<std::uint32_t>(c) + 1; k < nc; ++k) {
            if (row[k] == 0) continue;
            const std::uint32_t pk = pivot_of[k];
            if (pk == npos) continue;
            const std::uint64_t mult = p - row[k];
            const auto& prow = pivrows[pk];
            for (std::uint32_t kk = k; kk < nc; ++kk) {
                if (prow[kk] == 0) continue;
                row[kk] = static_cast<std::uint32_t>((row[kk] + mult * prow[kk]) % p);
            }
        }
    }

    std::vector<SparseRow> out(rows.size());
    for (std::size_t idx = 0; idx < rows.size(); ++idx) {
        if (result_of[idx] < 0) continue;
        const auto& row = pivrows[static_cast<std::size_t>(result_of[idx])];
        for (std::uint32_t k = 0; k < nc; ++k) {
            if (row[k] == 0) continue;
            out[idx].cols.push_back(used[k]);
            out[idx].coeffs.push_back(row[k]);
        }
    }
    return out;
}

ModPoly F4Engine::row_to_poly(const SparseRow& row, const SymbolicLayout& layout) const {
    std::vector<Monomial> monos;
    monos.reserve(row.cols.size());
    for (const std::uint32_t c : row.cols) monos.push_back(layout.all_monomials[c]);
    return ModPoly::from_sorted(std::move(monos), row.coeffs);
}

bool F4Engine::step(GBMode mode, LearningTrace* record, const LearningTrace* replay) {
    if (pairs_.empty()) return false;
    std::vector<CriticalPair> batch = select_batch();

    IterationStat ist;
    ist.degree = batch.front().degree;
    ist.pairs = static_cast<std::uint32_t>(batch.size());

    const TraceIteration* ti = nullptr;
    if (mode == GBMode::replay) {
        assert(replay);
        if (iteration_ >= replay->iterations.size())
            throw ReplayMismatch("learning trace exhausted before the pair queue");
        ti = &replay->iterations[iteration_];
        if (ti->batch.size() != batch.size())
            throw ReplayMismatch("batch size differs from the recorded run");
        std::vector<CriticalPair> surviving;
        for (std::size_t k = 0; k < batch.size(); ++k) {
            if (ti->batch[k] != std::make_pair(batch[k].i, batch[k].j))
                throw ReplayMismatch("batch pairs differ from the recorded run");
            if (ti->zero[k]) {
                ++stats_.pairs_skipped_learning;
            } else {
                surviving.push_back(batch[k]);
            }
        }
        batch = std::move(surviving);
    }

    SymbolicLayout own;
    const SymbolicLayout* layout;
    if (mode == GBMode::replay) {
        layout = &ti->layout;
    } else {
        own = symbolic_preprocess(batch);
        layout = &own;
    }

    std::vector<ModPoly> new_elems;
    std::vector<std::uint8_t> zero_flags(batch.size(), 1);
    if (!batch.empty()) {
        const ReductorMatrix mx = build_matrix(*layout);
        ist.matrix_rows = static_cast<std::uint32_t>(mx.rows());
        ist.matrix_cols = static_cast<std::uint32_t>(mx.cols());
        const auto rows = reduce_batch(batch, mx);
        stats_.pairs_reduced += batch.size();
        const auto rref =
            echelonize(rows, static_cast<std::uint32_t>(mx.cols()), field_, mode != GBMode::plain);
        for (std::size_t k = 0; k < rref.size(); ++k) {
            if (rref[k].zero()) {
                ++stats_.zero_reductions;
                continue;
            }
            zero_flags[k] = 0;
            new_elems.push_back(row_to_poly(rref[k], *layout));
        }
    }

    if (mode == GBMode::replay) {
        if (new_elems.size() != ti->new_leads.size())
            throw ReplayMismatch("new entry count differs from the recorded run");
        for (std::size_t k = 0; k < new_elems.size(); ++k)
            if (!(new_elems[k].lead_mono() == ti->new_leads[k]))
                throw ReplayMismatch("new entry lead differs from the recorded run");
    }
    if (mode == GBMode::record) {
        assert(record);
        TraceIteration rec;
        rec.batch.reserve(batch.size());
        for (const auto& pr : batch) rec.batch.emplace_back(pr.i, pr.j);
        rec.zero = zero_flags;
        rec.layout = *layout;
        for (const auto& e : new_elems) rec.new_leads.push_back(e.lead_mono());
        record->iterations.push_back(std::move(rec));
    }

    for (const auto& e : new_elems) update(e);

    ist.new_elements = static_cast<std::uint32_t>(new_elems.size());
    ist.zero_pairs = static_cast<std::uint32_t>(
        std::count(zero_flags.begin(), zero_flags.end(), std::uint8_t{1}));
    stats_.iterations.push_back(ist);
    ++iteration_;
    return true;
}

std::vector<ModPoly> F4Engine::reduced_basis() const {
    const ModRing ring{field_};
    std::vector<ModPoly> divisors;
    for (std::size_t g = 0; g < basis_.size(); ++g)
        if (alive_[g]) divisors.push_back(basis_[g]);

    // Alive leads are pairwise indivisible, and tail monomials are never
    // divisible by the element's own lead (graded order), so each tail can be
    // reduced against the full alive list.
    std::vector<ModPoly> out;
    out.reserve(divisors.size());
    for (const auto& g : divisors) {
        std::vector<Monomial> tail_m(g.monos().begin() + 1, g.monos().end());
        std::vector<std::uint32_t> tail_c(g.coeffs().begin() + 1, g.coeffs().end());
        const ModPoly tail = ModPoly::from_sorted(std::move(tail_m), std::move(tail_c));
        const ModPoly nf = heap_divide(ring, tail, divisors).remainder;
        std::vector<Monomial> monos;
        std::vector<std::uint32_t> coeffs;
        monos.reserve(nf.size() + 1);
        coeffs.reserve(nf.size() + 1);
        monos.push_back(g.lead_mono());
        coeffs.push_back(1);
        monos.insert(monos.end(), nf.monos().begin(), nf.monos().end());
        coeffs.insert(coeffs.end(), nf.coeffs().begin(), nf.coeffs().end());
        out.push_back(ModPoly::from_sorted(std::move(monos), std::move(coeffs)));
    }
    std::sort(out.begin(), out.end(), [](const ModPoly& a, const ModPoly& b) {
        return degrevlex_greater(a.lead_mono(), b.lead_mono());
    });
    return out;
}

GBRunOutput gbasis_modp(const std::vector<ModPoly>& generators, const PrimeField& field,
                        GBMode mode, const LearningTrace* trace, int threads) {
    assert(mode != GBMode::replay || trace != nullptr);
    F4Engine eng(field, threads);
    const ModRing ring{field};
    for (const auto& g : generators) {
        assert(!g.zero());
        eng.update(make_monic(ring, g));
    }

    GBRunOutput out;
    LearningTrace* rec = mode == GBMode::record ? &out.trace : nullptr;
    const LearningTrace* rep = mode == GBMode::replay ? trace : nullptr;
    std::uint32_t iterations = 0;
    while (eng.step(mode, rec, rep)) ++iterations;
    if (rep && iterations != rep->iterations.size())
        throw ReplayMismatch("iteration count differs from the recorded run");

    out.basis = eng.reduced_basis();
    out.stats = eng.stats();
    return out;
}

}  // namespace modgb
