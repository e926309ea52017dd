#pragma once

#include "wyang/column.hpp"
#include "wyang/io.hpp"
#include "wyang/wsuper.hpp"
#include "wyang/yangian.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace wyang {

struct CheckReport {
    std::string id;
    std::string status = "pass";  // pass | fail | skipped
    long instances = 0;
    long skipped = 0;
    std::vector<json> failures;
    double millis = 0;
    std::string note;

    bool failed() const { return status == "fail"; }
};

inline json report_to_json(const CheckReport& r) {
    json j{{"id", r.id}, {"status", r.status}, {"instances", r.instances}, {"skipped", r.skipped},
           {"failures", r.failures}, {"millis", r.millis}};
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

// {checks: [...]} sorted by id.
inline json reports_to_json(std::vector<CheckReport> reports) {
    std::stable_sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    json checks = json::array();
    for (const auto& r : reports) checks.push_back(report_to_json(r));
    return {{"checks", checks}};
}

namespace detail {

class Stopwatch {
public:
    double millis() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Runs f(0..n-1) on `jobs` threads; rethrows the first exception.
template <class F>
void parallel_for(std::size_t n, int jobs, F&& f) {
    if (jobs <= 1 || n < 2) {
        for (std::size_t k = 0; k < n; ++k) f(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    const int t = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(jobs), n));
    for (int w = 0; w < t; ++w)
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < n; k = next++) {
                try {
                    f(k);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!err) err = std::current_exception();
                    next = n;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

inline void finish(CheckReport& r, const Stopwatch& sw) {
    if (!r.failures.empty())
        r.status = "fail";
    else if (r.instances == 0 && r.skipped > 0)
        r.status = "skipped";
    r.millis = sw.millis();
}

}  // namespace detail

// Images of generator symbols in U(p). Fill with bind() before sharing the
// table across threads; lookups are then read-only.
class ImageTable {
public:
    explicit ImageTable(const ParabolicImages& img) : img_(img) {}

    const SuperAlgebra& algebra() const { return img_.w().algebra(); }

    Element compute(const GeneratorSymbol& g) const {
        const AdmissibleShape& mu = img_.shape();
        if ((g.family == Family::D || g.family == Family::Dp) && g.r == 0)
            return Element::scalar(g.i == g.j ? 1 : 0);
        if (g.r < 0 || !in_window(mu, g)) throw std::out_of_range("unbound symbol " + g.str() + " (out of window)");
        switch (g.family) {
            case Family::D: return img_.D(g.x, g.i, g.j, g.r);
            case Family::Dp: return img_.Dp(g.x, g.i, g.j, g.r);
            case Family::E: return g.composite() ? img_.E(g.x, g.y, g.i, g.j, g.r, 1) : img_.E(g.x, g.i, g.j, g.r);
            case Family::F: return g.composite() ? img_.F(g.x, g.y, g.i, g.j, g.r, 1) : img_.F(g.y, g.i, g.j, g.r);
        }
        throw std::logic_error("unknown family");
    }

    void bind(const std::vector<GeneratorSymbol>& gs) {
        for (const auto& g : gs)
            if (!table_.count(g)) table_.emplace(g, compute(g));
    }
    void bind(const YExpr& e) { bind(e.symbols()); }

    const Element& at(const GeneratorSymbol& g) const {
        auto it = table_.find(g);
        if (it == table_.end()) throw std::out_of_range("unbound symbol " + g.str());
        return it->second;
    }
    bool contains(const GeneratorSymbol& g) const { return table_.count(g) > 0; }
    const std::map<GeneratorSymbol, Element>& entries() const { return table_; }

private:
    const ParabolicImages& img_;
    std::map<GeneratorSymbol, Element> table_;
};

// Homomorphic evaluation of a formal expression.
inline Element evaluate(const YExpr& e, const ImageTable& env) {
    const SuperAlgebra& A = env.algebra();
    Element out;
    for (const auto& [w, c] : e.terms()) {
        Element acc = Element::scalar(c);
        for (const auto& g : w) {
            acc = A.multiply(acc, env.at(g));
            if (acc.is_zero()) break;
        }
        out += acc;
    }
    return out;
}

// Simple and composite generators (D, D', E, F) with degree at most rmax.
inline std::vector<GeneratorSymbol> generator_symbols(const AdmissibleShape& mu, int rmax, bool with_dp = true) {
    std::vector<GeneratorSymbol> out;
    const int B = mu.blocks();
    for (int a = 1; a <= B; ++a)
        for (int i = 1; i <= mu.size(a); ++i)
            for (int j = 1; j <= mu.size(a); ++j)
                for (int r = 1; r <= rmax; ++r) {
                    out.push_back(GeneratorSymbol::D(a, i, j, r));
                    if (with_dp) out.push_back(GeneratorSymbol::Dp(a, i, j, r));
                }
    for (int a = 1; a <= B; ++a)
        for (int b = a + 1; b <= B; ++b) {
            for (int i = 1; i <= mu.size(a); ++i)
                for (int j = 1; j <= mu.size(b); ++j)
                    for (int r = mu.s(a, b) + 1; r <= rmax; ++r) out.push_back(GeneratorSymbol::E(a, b, i, j, r));
            for (int i = 1; i <= mu.size(b); ++i)
                for (int j = 1; j <= mu.size(a); ++j)
                    for (int r = mu.s(b, a) + 1; r <= rmax; ++r) out.push_back(GeneratorSymbol::F(b, a, i, j, r));
        }
    return out;
}

// Evaluation with products of two generators and inner brackets shared
// across calls. The memo stops growing once it holds `limit` terms.
class Evaluator {
public:
    explicit Evaluator(const ImageTable& env, std::size_t limit = 6'000'000, StopFn stop = {})
        : env_(env), limit_(limit), stop_(std::move(stop)) {}

    Element eval(const YExpr& e) {
        const SuperAlgebra& A = env_.algebra();
        Element out;
        for (const auto& [w, c] : e.terms()) {
            if (w.size() < 2) {
                Element t = w.empty() ? Element::scalar(1) : env_.at(w[0]);
                out.add_scaled(t, c);
                continue;
            }
            std::shared_ptr<const Element> head = pair(w[0], w[1]);
            if (w.size() == 2) {
                out.add_scaled(*head, c);
                continue;
            }
            Element acc = *head;
            for (std::size_t k = 2; k < w.size() && !acc.is_zero(); ++k) acc = A.multiply(acc, env_.at(w[k]), stop_);
            out.add_scaled(acc, c);
        }
        return out;
    }

    // Uses the bracketed form when it expands to exactly `flat`.
    Element eval(const YExpr& flat, const std::vector<NestedBracket>& nested) {
        if (nested.empty()) return eval(flat);
        YExpr expanded;
        for (const auto& nb : nested) expanded += nb.expand();
        if (!(expanded == flat)) return eval(flat);
        const SuperAlgebra& A = env_.algebra();
        Element out;
        for (const auto& nb : nested) out.add_scaled(A.bracket(env_.at(nb.x), *inner(nb.y, nb.z), stop_), nb.c);
        return out;
    }

    std::pair<Element, Element> instance(const RelationInstance& ri) { return {eval(ri.lhs, ri.nested), eval(ri.rhs)}; }

private:
    using Key = std::pair<GeneratorSymbol, GeneratorSymbol>;
    using Memo = std::map<Key, std::shared_ptr<const Element>>;

    template <class F>
    std::shared_ptr<const Element> memo(Memo& m, const Key& k, F&& make) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            if (auto it = m.find(k); it != m.end()) return it->second;
        }
        auto v = std::make_shared<const Element>(make());
        std::lock_guard<std::mutex> lock(mu_);
        if (held_ + v->size() <= limit_) {
            held_ += v->size();
            m.emplace(k, v);
        }
        return v;
    }

    std::shared_ptr<const Element> pair(const GeneratorSymbol& x, const GeneratorSymbol& y) {
        return memo(products_, {x, y}, [&] { return env_.algebra().multiply(env_.at(x), env_.at(y), stop_); });
    }
    std::shared_ptr<const Element> inner(const GeneratorSymbol& y, const GeneratorSymbol& z) {
        return memo(brackets_, {y, z}, [&] { return env_.algebra().bracket(env_.at(y), env_.at(z), stop_); });
    }

    const ImageTable& env_;
    std::size_t limit_, held_ = 0;
    StopFn stop_;
    std::mutex mu_;
    Memo products_, brackets_;
};

// Evaluates both sides of one instance.
inline std::pair<Element, Element> evaluate_instance(const RelationInstance& ri, const ImageTable& env) {
    Evaluator ev(env, 0);
    return ev.instance(ri);
}

inline json failure_json(const RelationInstance& ri, const Element& lhs, const Element& rhs, const SuperAlgebra& A) {
    return {{"key", ri.key()}, {"instance", instance_to_json(ri)}, {"lhs", element_to_json(lhs, A)}, {"rhs", element_to_json(rhs, A)}};
}

using Clock = std::chrono::steady_clock;
using Deadline = std::optional<Clock::time_point>;

inline Deadline deadline_after(double budget_ms) {
    if (budget_ms <= 0) return std::nullopt;
    return Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double, std::milli>(budget_ms));
}

namespace detail {

// Rough number of monomial pairs met while evaluating an instance.
inline double instance_cost(const RelationInstance& ri, const ImageTable& env) {
    auto sz = [&](const GeneratorSymbol& g) { return static_cast<double>(std::max<std::size_t>(1, env.at(g).size())); };
    double c = 0;
    for (const YExpr* e : {&ri.lhs, &ri.rhs})
        for (const auto& [w, k] : e->terms()) {
            double t = 1;
            for (const auto& g : w) t *= sz(g);
            c += t;
        }
    return c;
}

}  // namespace detail

// Every instance of `catalog` evaluated in U(p), cheapest first.
// Out-of-window instances are counted as skipped. Past the deadline the
// remaining instances are left unchecked and the report fails.
inline CheckReport check_relations(const ParabolicImages& img, const std::vector<RelationInstance>& catalog, int jobs = 1,
                                   const std::string& id = "main.relations", Deadline deadline = std::nullopt) {
    detail::Stopwatch sw;
    CheckReport rep{id};
    ImageTable env(img);
    std::vector<const RelationInstance*> live;
    for (const auto& ri : catalog) {
        if (ri.out_of_window) {
            ++rep.skipped;
            continue;
        }
        env.bind(ri.lhs);
        env.bind(ri.rhs);
        live.push_back(&ri);
    }
    std::vector<std::pair<double, const RelationInstance*>> order;
    for (const auto* ri : live) order.emplace_back(detail::instance_cost(*ri, env), ri);
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    std::atomic<bool> expired{false};
    StopFn stop;
    if (deadline)
        stop = [&expired, d = *deadline] {
            if (!expired && Clock::now() >= d) expired = true;
            return expired.load();
        };
    std::vector<std::optional<json>> bad(order.size());
    std::vector<char> done(order.size(), 0);
    const SuperAlgebra& A = env.algebra();
    Evaluator ev(env, 6'000'000, stop);
    detail::parallel_for(order.size(), jobs, [&](std::size_t k) {
        if (stop && stop()) return;
        try {
            auto [l, r] = ev.instance(*order[k].second);
            if (l != r) bad[k] = failure_json(*order[k].second, l, r, A);
            done[k] = 1;
        } catch (const Interrupted&) {
        }
    });
    long unchecked = 0;
    std::string first_unchecked;
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (done[k]) {
            ++rep.instances;
        } else if (unchecked++ == 0) {
            first_unchecked = order[k].second->key();
        }
        if (bad[k]) rep.failures.push_back(std::move(*bad[k]));
    }
    std::stable_sort(rep.failures.begin(), rep.failures.end(),
                     [](const json& x, const json& y) { return x.at("key").get<std::string>() < y.at("key").get<std::string>(); });
    std::vector<std::string> notes;
    if (rep.skipped) notes.push_back(std::to_string(rep.skipped) + " skipped: out-of-window");
    if (unchecked) {
        notes.push_back("time budget exhausted: " + std::to_string(unchecked) + " of " + std::to_string(order.size()) +
                        " instances unchecked");
        rep.failures.push_back({{"key", "time-budget"}, {"checked", rep.instances}, {"unchecked", unchecked},
                                {"first_unchecked", first_unchecked}});
    }
    for (std::size_t k = 0; k < notes.size(); ++k) rep.note += (k ? "; " : "") + notes[k];
    detail::finish(rep, sw);
    return rep;
}

inline CheckReport check_relations(const ParabolicImages& img, int rmax, int jobs = 1, Deadline deadline = std::nullopt) {
    return check_relations(img, relation_catalog(img.shape(), rmax), jobs, "main.relations", deadline);
}

// Re-evaluates a serialized counterexample; true iff both sides reproduce
// the stored elements exactly.
inline bool replay_failure(const json& failure, const ParabolicImages& img) {
    RelationInstance ri = instance_from_json(failure.at("instance"));
    ImageTable env(img);
    env.bind(ri.lhs);
    env.bind(ri.rhs);
    auto [l, r] = evaluate_instance(ri, env);
    const SuperAlgebra& A = env.algebra();
    return l != r && element_to_json(l, A) == failure.at("lhs") && element_to_json(r, A) == failure.at("rhs");
}

// Negates the right side of the first instance with a nonzero right side.
inline std::vector<RelationInstance> corrupt_catalog(std::vector<RelationInstance> cat, const std::string& id = "ef") {
    for (auto& ri : cat)
        if (ri.id == id && !ri.out_of_window && !ri.rhs.is_zero()) {
            ri.rhs = -ri.rhs;
            return cat;
        }
    throw std::invalid_argument("no instance of " + id + " with a nonzero right side");
}

// The four parts of the main theorem: invariance, relations, truncation and
// filtered degree.
// A positive budget_ms bounds the wall time; relation instances still
// unchecked when it runs out make main.relations fail.
inline std::vector<CheckReport> check_main_theorem(const WSuper& w, const AdmissibleShape& mu, int rmax, int jobs = 1,
                                                   GenOracle oracle = GenOracle::Closed, double budget_ms = 0) {
    const Deadline deadline = deadline_after(budget_ms);
    w.pyramid().require_main_mode();
    ParabolicImages img(w, mu, oracle);
    std::vector<CheckReport> out;

    detail::Stopwatch sw;
    ImageTable env(img);
    const auto gens = generator_symbols(mu, rmax);
    env.bind(gens);
    const SuperAlgebra& A = w.algebra();

    CheckReport inv{"main.invariance"};
    std::vector<std::optional<json>> bad(gens.size());
    detail::parallel_for(gens.size(), jobs, [&](std::size_t k) {
        const Element& y = env.at(gens[k]);
        if (auto pq = w.first_non_invariance(y)) {
            GeneratorId g{A.index_at(pq->first), A.index_at(pq->second)};
            bad[k] = json{{"generator", symbol_to_json(gens[k])}, {"name", gens[k].str()},
                          {"m_element", {g.row.str(), g.col.str()}},
                          {"action", element_to_json(w.twisted_action(pq->first, pq->second, y), A)}};
        }
    });
    inv.instances = static_cast<long>(gens.size());
    for (auto& b : bad)
        if (b) inv.failures.push_back(std::move(*b));
    detail::finish(inv, sw);
    out.push_back(inv);

    out.push_back(check_relations(img, rmax, jobs, deadline));

    detail::Stopwatch sw2;
    CheckReport tr{"main.truncation"};
    const int p1 = mu.p(1, w.level());
    for (int r = p1 + 1; r <= rmax; ++r) {
        ++tr.instances;
        Element d = img.D(1, 1, 1, r);
        if (!d.is_zero()) tr.failures.push_back({{"generator", symbol_to_json(GeneratorSymbol::D(1, 1, 1, r))}, {"image", element_to_json(d, A)}});
    }
    if (tr.instances == 0) tr.note = "no degree above p_1 within rmax";
    detail::finish(tr, sw2);
    out.push_back(tr);

    detail::Stopwatch sw3;
    CheckReport fl{"main.filtration"};
    for (const auto& g : gens) {
        ++fl.instances;
        const int deg = A.kazhdan_degree(env.at(g));
        if (deg > g.r) fl.failures.push_back({{"generator", symbol_to_json(g)}, {"name", g.str()}, {"kazhdan_degree", deg}});
    }
    detail::finish(fl, sw3);
    out.push_back(fl);
    return out;
}

// Free generators of the associated graded centralizer as (degree, parity).
inline std::vector<std::pair<int, int>> centralizer_generators(const SignedPyramid& pi) {
    std::vector<std::pair<int, int>> out;
    for (const auto& c : centralizer_basis(pi)) out.emplace_back(c.degree, c.parity);
    return out;
}

// PBW count of the truncated shifted Yangian against the symmetric algebra
// of the centralizer, d = 0..dmax, for every listed admissible shape.
inline CheckReport check_dimensions(const SignedPyramid& pi, int dmax, std::vector<AdmissibleShape> shapes = {}) {
    detail::Stopwatch sw;
    CheckReport rep{"dims"};
    const TruncationSpec t = to_shift_and_level(pi);
    if (shapes.empty()) {
        shapes.push_back(AdmissibleShape::minimal(t.sigma));
        shapes.push_back(AdmissibleShape(std::vector<int>(t.sigma.size(), 1), t.sigma));
    }
    const auto ce = centralizer_generators(pi);
    for (int d = 0; d <= dmax; ++d) {
        const long long rhs = count_supermonomials(ce, d);
        for (const auto& mu : shapes) {
            ++rep.instances;
            const long long lhs = pbw_dimension(mu, t.level, d);
            if (lhs != rhs) rep.failures.push_back({{"d", d}, {"mu", mu.str()}, {"pbw", lhs}, {"centralizer", rhs}});
        }
    }
    detail::finish(rep, sw);
    return rep;
}

namespace detail {

// lhs - rhs scaled so that its first term has coefficient 1.
// Canonical text of a relation up to scaling. Adjacent D or D' factors of
// different blocks commute by the dd relations, so they are put in block order.
inline std::string normalized_relation(const YExpr& e) {
    auto diagonal = [](const GeneratorSymbol& g) { return g.family == Family::D || g.family == Family::Dp; };
    YExpr n;
    for (const auto& [word, c] : e.terms()) {
        Word w = word;
        for (std::size_t pass = 0; pass < w.size(); ++pass)
            for (std::size_t k = 0; k + 1 < w.size(); ++k)
                if (diagonal(w[k]) && diagonal(w[k + 1]) && w[k].x > w[k + 1].x) std::swap(w[k], w[k + 1]);
        n.add(w, c);
    }
    if (n.is_zero()) return "0";
    n *= Rational(1) / n.terms().begin()->second;
    return expr_to_json(n).dump();
}

}  // namespace detail

// Syntactic check: tau maps each instance for sigma to an instance for the
// transposed shift matrix, up to an overall scalar.
inline CheckReport check_tau_catalog(const AdmissibleShape& mu, int rmax) {
    detail::Stopwatch sw;
    CheckReport rep{"symmetry.tau_catalog"};
    AdmissibleShape mut(mu.parts(), mu.sigma().transpose());
    std::set<std::string> target;
    for (const auto& ri : relation_catalog(mut, rmax)) target.insert(detail::normalized_relation(ri.lhs - ri.rhs));
    for (const auto& ri : relation_catalog(mu, rmax)) {
        ++rep.instances;
        YExpr img = tau(ri.lhs - ri.rhs);
        if (!target.count(detail::normalized_relation(img)))
            rep.failures.push_back({{"key", ri.key()}, {"instance", instance_to_json(ri)}, {"tau", expr_to_json(img)}});
    }
    detail::finish(rep, sw);
    return rep;
}

// Syntactic check: iota maps each instance for one shape to an instance
// for the other.
inline CheckReport check_iota_catalog(const AdmissibleShape& from, const AdmissibleShape& to, int rmax) {
    detail::Stopwatch sw;
    CheckReport rep{"shift.iota_catalog"};
    require_iota_compatible(from.sigma(), to.sigma());
    int widen = 0;
    for (int i = 1; i <= from.sigma().size(); ++i)
        for (int j = 1; j <= from.sigma().size(); ++j) widen = std::max(widen, to.sigma()(i, j) - from.sigma()(i, j));
    std::set<std::string> target;
    for (const auto& ri : relation_catalog(to, rmax + widen)) target.insert(detail::normalized_relation(ri.lhs - ri.rhs));
    for (const auto& ri : relation_catalog(from, rmax)) {
        ++rep.instances;
        YExpr img = iota(ri.lhs - ri.rhs, from, to);
        if (!target.count(detail::normalized_relation(img)))
            rep.failures.push_back({{"key", ri.key()}, {"instance", instance_to_json(ri)}, {"iota", expr_to_json(img)}});
    }
    detail::finish(rep, sw);
    return rep;
}

// pi and pi_vec must have the same rows up to left offsets.
inline void require_row_shift(const SignedPyramid& pi, const SignedPyramid& pv) {
    if (pi.row_count() != pv.row_count()) throw std::invalid_argument("not a row-shift pair: different number of rows");
    for (int i = 0; i < pi.row_count(); ++i) {
        const auto &a = pi.rows()[i], &b = pv.rows()[i];
        if (a.sign != b.sign || a.length != b.length)
            throw std::invalid_argument("not a row-shift pair: row " + std::to_string(i + 1) + " differs in sign or length");
    }
    pi.require_main_mode();
    pv.require_main_mode();
}

inline std::vector<CheckReport> check_shift_independence(const SignedPyramid& pi, const SignedPyramid& pv, int dmax, int rmax) {
    require_row_shift(pi, pv);
    const TruncationSpec s = to_shift_and_level(pi), t = to_shift_and_level(pv);
    std::vector<CheckReport> out;

    detail::Stopwatch sw;
    CheckReport cond{"shift.iota_condition"};
    for (int i = 1; i < s.sigma.size(); ++i) {
        ++cond.instances;
        const int a = s.sigma(i, i + 1) + s.sigma(i + 1, i), b = t.sigma(i, i + 1) + t.sigma(i + 1, i);
        if (a != b) cond.failures.push_back({{"i", i}, {"sum", a}, {"shifted_sum", b}});
    }
    detail::finish(cond, sw);
    out.push_back(cond);

    detail::Stopwatch sw2;
    CheckReport dims{"shift.dimensions"};
    const AdmissibleShape ms = AdmissibleShape::minimal(s.sigma), mt = AdmissibleShape::minimal(t.sigma);
    for (int d = 0; d <= dmax; ++d) {
        ++dims.instances;
        const long long a = pbw_dimension(ms, s.level, d), b = pbw_dimension(mt, t.level, d);
        if (a != b) dims.failures.push_back({{"d", d}, {"pbw", a}, {"shifted_pbw", b}});
    }
    detail::finish(dims, sw2);
    out.push_back(dims);

    if (cond.failures.empty()) {
        std::vector<int> ones(s.sigma.size(), 1);
        out.push_back(check_iota_catalog(AdmissibleShape(ones, s.sigma), AdmissibleShape(ones, t.sigma), rmax));
    }
    return out;
}

// Realizes a baby tensor inside U(p): the Yangian factor through the
// smaller pyramid, the gl_beta factor on the removed column.
inline Element realize(const BabyImage& im, const ColumnRemoval& cr, const ImageTable& dot_env) {
    const SuperAlgebra& A = cr.pyramid().algebra();
    Element out;
    for (const auto& t : im.terms) {
        Element y = cr.embed(evaluate(t.yangian, dot_env));
        if (t.k == 0)
            out += y;
        else if (im.side == Side::R)
            out += A.multiply(y, cr.gl_unit(t.k, t.l));
        else
            out += A.multiply(cr.gl_unit(t.k, t.l), y);
    }
    return out;
}

// A generator written through simple generators with the degrees of `mu`
// (pivot 1). Read in the smaller Yangian this is its image under the
// inclusion that the counit retraction must reproduce.
inline YExpr simple_expansion(const AdmissibleShape& mu, const GeneratorSymbol& g) {
    if (!g.composite()) return YExpr::symbol(g);
    if (g.family == Family::E) {
        const int a = g.x, b = g.y, s = mu.s(b - 1, b);
        return -bracket(simple_expansion(mu, GeneratorSymbol::E(a, b - 1, g.i, 1, g.r - s)),
                        YExpr::symbol(GeneratorSymbol::E(b - 1, 1, g.j, s + 1)));
    }
    const int b = g.x, a = g.y, s = mu.s(b, b - 1);
    return -bracket(YExpr::symbol(GeneratorSymbol::F(b - 1, g.i, 1, s + 1)),
                    simple_expansion(mu, GeneratorSymbol::F(b - 1, a, 1, g.j, g.r - s)));
}

// psi_side against Delta_side on every generator of degree <= rmax, the
// composite formulas for every pivot, and the counit retraction.
inline std::vector<CheckReport> check_baby(const SignedPyramid& pi, Side side, int rmax) {
    const std::string base = std::string("baby.") + side_char(side);
    pi.require_main_mode();
    WSuper w(pi);
    const ShiftMatrix& sigma = w.shifts();
    bool zero = true;
    for (const auto& row : sigma.s)
        for (int v : row) zero = zero && v == 0;
    if (zero) {
        CheckReport r{base};
        r.status = "skipped";
        r.note = "rectangular pyramid: no side is defined";
        return {r};
    }
    const AdmissibleShape mu = AdmissibleShape::minimal(sigma);
    const BabyData bd = baby_data(mu, side);  // throws when the side is undefined
    ColumnRemoval cr(pi, side);
    WSuper wd(cr.dot());
    if (!(bd.dot_sigma == wd.shifts())) throw std::logic_error("shift matrix of the smaller pyramid does not match the baby rule");
    const AdmissibleShape mud(mu.parts(), wd.shifts());
    ParabolicImages img(w, mu), dimg(wd, mud);
    ImageTable env(img), denv(dimg);
    const SuperAlgebra& A = w.algebra();
    std::vector<CheckReport> out;

    detail::Stopwatch sw0;
    CheckReport rec{base + ".recursion"};
    RecursionReport rr = column_removal_check(pi, mu, side, rmax);
    rec.instances = rr.instances;
    for (const auto& f : rr.failures) rec.failures.push_back({{"identity", f}});
    detail::finish(rec, sw0);
    out.push_back(rec);

    const auto gens = generator_symbols(mu, rmax, false);
    auto dot_bind = [&](const BabyImage& im) {
        for (const auto& t : im.terms) denv.bind(t.yangian);
    };

    detail::Stopwatch sw1;
    CheckReport simple{base + ".generators"}, comp{base + ".composites"};
    for (const auto& g : gens) {
        env.bind({g});
        const Element lhs = cr.psi(env.at(g));
        const int pivots = g.composite() ? mu.size(std::max(g.x, g.y) - 1) : 1;
        CheckReport& rep = g.composite() ? comp : simple;
        for (int h = 1; h <= pivots; ++h) {
            BabyImage im = baby_comultiplication(mu, side, g, h);
            dot_bind(im);
            const Element rhs = realize(im, cr, denv);
            ++rep.instances;
            if (lhs != rhs)
                rep.failures.push_back({{"generator", symbol_to_json(g)}, {"name", g.str()}, {"pivot", h},
                                        {"psi", element_to_json(lhs, A)}, {"delta", element_to_json(rhs, A)}});
        }
    }
    detail::finish(simple, sw1);
    if (comp.instances == 0) comp.note = "no composite generators for this shape";
    detail::finish(comp, sw1);
    out.push_back(simple);
    out.push_back(comp);

    detail::Stopwatch sw2;
    CheckReport cu{base + ".counit"};
    for (const auto& g : gens) {
        ++cu.instances;
        const YExpr inc = simple_expansion(mu, g);
        denv.bind(inc);
        const Element lhs = cr.counit(cr.psi(env.at(g))), rhs = cr.embed(evaluate(inc, denv));
        if (lhs != rhs)
            cu.failures.push_back({{"generator", symbol_to_json(g)}, {"name", g.str()}, {"counit", element_to_json(lhs, A)},
                                   {"inclusion", element_to_json(rhs, A)}});
    }
    detail::finish(cu, sw2);
    out.push_back(cu);
    return out;
}

}  // namespace wyang
