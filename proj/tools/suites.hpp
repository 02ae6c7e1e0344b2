#pragma once

// Verification suites behind the `verify` subcommand.  Each suite walks a
// grid of independent inputs, so the work is split across threads and the
// results are reassembled in input order; a suite passes when no grid point
// produced a counterexample.

#include <icmb/audit.hpp>
#include <icmb/bounds.hpp>
#include <icmb/local.hpp>
#include <icmb/oracle.hpp>

#include <cstddef>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace icmb::suites {

template <typename Fn>
inline void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    if (threads > n) threads = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&fn, t, threads, n] {
            for (std::size_t i = t; i < n; i += threads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

struct SuiteResult {
    std::string name;
    unsigned long long checks = 0;
    std::vector<std::string> failures;  // in input order; empty means pass

    bool pass() const { return failures.empty(); }
};

namespace detail {

// Collapse per-index failure slots into input order.
inline void collect(SuiteResult& res, std::vector<std::string>& slots,
                    const std::vector<unsigned>& counts) {
    for (auto c : counts) res.checks += c;
    for (auto& s : slots)
        if (!s.empty()) res.failures.push_back(std::move(s));
}

inline bool is_squarefree(const Integer& v) {
    for (const auto& [p, e] : arith::factorize(v).factors)
        if (e > 1) return false;
    return true;
}

}  // namespace detail

// Orbit-count formula coherence.  Cubic side: for every prime dividing
// disc phi_m, the generic counting formula applied to the case's local data
// must reproduce the per-case closed form.  Quadratic side: the quadratic
// orbit count must match the Bass local factor under the splitting-to-
// residue-field dictionary, over a fixed grid p <= 50, S <= 6.
inline SuiteResult run_coherence(long long m_from, long long m_to, unsigned threads) {
    SuiteResult res{"coherence"};
    if (m_from > m_to) return res;

    const std::size_t n = static_cast<std::size_t>(m_to - m_from + 1);
    std::vector<std::string> slots(n);
    std::vector<unsigned> counts(n, 0);
    parallel_for(n, threads, [&](std::size_t i) {
        const Integer m(m_from + static_cast<long long>(i));
        const auto [delta_phi, c_phi] = local::cs_invariants(m);
        for (const auto& [p, e] : arith::factorize(delta_phi).factors) {
            const auto cs = local::cs_classify_prime(m, p);
            const Integer direct = local::cs_orbital(cs);
            const Integer generic = local::orbital_cubic(local::cs_local_data(cs));
            ++counts[i];
            if (direct != generic && slots[i].empty()) {
                std::ostringstream os;
                os << "cubic m=" << m << " p=" << p << " case=" << local::cs_case_code(cs.id)
                   << ": table " << direct << " != formula " << generic;
                slots[i] = os.str();
            }
        }
    });
    detail::collect(res, slots, counts);

    for (const Integer& p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
        for (unsigned s = 0; s <= 6; ++s) {
            for (auto split : {local::Splitting::Split, local::Splitting::Inert,
                               local::Splitting::Ramified}) {
                const Integer orb = local::orbital_quadratic({p, s, split});
                const bool domain = split != local::Splitting::Split;
                const unsigned res_deg = split == local::Splitting::Inert ? 2 : 1;
                const Integer bass = local::bass_local_factor({p, s, res_deg, domain});
                ++res.checks;
                if (orb != bass) {
                    std::ostringstream os;
                    os << "quadratic p=" << p << " S=" << s << " " << local::to_string(split)
                       << ": orbit count " << orb << " != Bass factor " << bass;
                    res.failures.push_back(os.str());
                }
            }
        }
    }
    return res;
}

// Exact identity between the local orbit product and the unit-index-weighted
// class number sum over the overorder lattice, across imaginary quadratic
// orders with |d| <= dmax squarefree and conductor <= fmax.
inline SuiteResult run_yun(unsigned dmax, unsigned fmax, unsigned threads) {
    SuiteResult res{"yun"};
    std::vector<std::pair<Integer, Integer>> tasks;
    for (long long d = -1; d >= -static_cast<long long>(dmax); --d) {
        if (!detail::is_squarefree(Integer(d))) continue;
        for (unsigned f = 1; f <= fmax; ++f) tasks.emplace_back(d, f);
    }

    std::vector<std::string> slots(tasks.size());
    std::vector<unsigned> counts(tasks.size(), 0);
    parallel_for(tasks.size(), threads, [&](std::size_t i) {
        const auto& [d, f] = tasks[i];
        const auto yc = oracle::yun_check(d, f);
        counts[i] = 1;
        if (!yc.ok) {
            std::ostringstream os;
            os << "d=" << d << " f=" << f << ": orbit product " << yc.lhs
               << " != overorder sum " << yc.rhs.str();
            slots[i] = os.str();
        }
    });
    detail::collect(res, slots, counts);
    return res;
}

// Exact monoid size versus both global bounds, for every imaginary quadratic
// field of |fundamental discriminant| <= discmax and conductor <= fmax.
inline SuiteResult run_audit(unsigned discmax, unsigned fmax, unsigned threads) {
    SuiteResult res{"audit"};
    std::vector<std::pair<Integer, Integer>> tasks;
    for (long long d = -1; d >= -static_cast<long long>(discmax); --d) {
        if (!detail::is_squarefree(Integer(d))) continue;
        Integer r = Integer(d) % 4;
        if (r < 0) r += 4;
        const Integer fund = (r == 1) ? Integer(d) : Integer(4 * d);
        if (-fund > discmax) continue;
        for (unsigned f = 1; f <= fmax; ++f) tasks.emplace_back(d, f);
    }

    std::vector<std::string> slots(tasks.size());
    std::vector<unsigned> counts(tasks.size(), 0);
    parallel_for(tasks.size(), threads, [&](std::size_t i) {
        const auto& [d, f] = tasks[i];
        counts[i] = 1;
        try {
            const auto rec = oracle::bound_audit(d, f);
            if (rec.icm > rec.bound_cor52 || rec.icm > rec.bound_cor53) {
                std::ostringstream os;
                os << "d=" << d << " f=" << f << ": icm " << rec.icm << " vs bounds "
                   << rec.bound_cor52 << ", " << rec.bound_cor53;
                slots[i] = os.str();
            }
        } catch (const std::exception& ex) {
            std::ostringstream os;
            os << "d=" << d << " f=" << f << ": " << ex.what();
            slots[i] = os.str();
        }
    });
    detail::collect(res, slots, counts);
    return res;
}

}  // namespace icmb::suites
