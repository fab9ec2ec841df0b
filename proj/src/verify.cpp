#include <algorithm>
#include <random>
#include <sstream>

#include "llt/workbench.hpp"

namespace llt {

namespace {
constexpr std::size_t kKeptMessages = 20;

std::uint64_t splitmix(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace

bool VerifyReport::ok() const {
    return rebuild_failures == 0 && lemma3_failures == 0 && audit_failures == 0 && lemma2_failures == 0 &&
           search_failures == 0 && edge_failures == 0 && insert_cost_failures == 0 && delete_cost_failures == 0 &&
           errors == 0;
}

std::string VerifyReport::summary() const {
    std::ostringstream out;
    out << "traces=" << traces << " ops=" << ops << " inserts=" << inserts << " deletes=" << deletes
        << " queries=" << queries << '\n'
        << "rebuild_failures=" << rebuild_failures << " lemma3_failures=" << lemma3_failures
        << " audit_failures=" << audit_failures << " lemma2_failures=" << lemma2_failures
        << " search_failures=" << search_failures << '\n'
        << "edge_checks=" << edge_checks << " edge_failures=" << edge_failures << '\n'
        << "insert_cost_failures=" << insert_cost_failures << " worst_insert_use=" << worst_insert_use
        << " delete_cost_failures=" << delete_cost_failures << " worst_delete_use=" << worst_delete_use << '\n'
        << "errors=" << errors << '\n'
        << coverage.report();
    const auto missing = coverage.missing();
    out << "coverage_missing=" << missing.size();
    for (const auto& m : missing) out << ' ' << m;
    out << '\n';
    for (const auto& m : messages) out << "violation: " << m << '\n';
    out << (ok() ? "verify: PASS" : "verify: FAIL") << '\n';
    return out.str();
}

TraceChecker::TraceChecker(const UniverseTree& universe, VerifyReport& report, std::uint64_t seed)
    : universe_(universe), report_(report), tree_(universe), rng_state_(seed) {}

void TraceChecker::note(const std::string& msg) {
    if (report_.messages.size() < kKeptMessages) report_.messages.push_back(msg);
}

void TraceChecker::apply(const TraceOp& op) {
    ++step_;
    ++report_.ops;
    const std::string where = "op " + std::to_string(step_) + " " + op.kind + " " + std::to_string(op.id);
    const HasseDiagram& h = tree_.hasse();
    try {
        switch (op.kind) {
        case 'I': {
            ++report_.inserts;
            const std::uint32_t before = tree_.height();
            tree_.insert(op.id);
            const std::uint64_t used = tree_.last_costs().insert_comparisons;
            const std::uint64_t bound = 8 * (std::uint64_t{before} + 1);
            report_.worst_insert_use = std::max(report_.worst_insert_use, double(used) / double(bound));
            if (used > bound) {
                ++report_.insert_cost_failures;
                note(where + ": insert comparisons " + std::to_string(used) + " > " + std::to_string(bound));
            }
            break;
        }
        case 'D': {
            ++report_.deletes;
            const std::uint64_t bound = delete_cost_bound(tree_shape(h));
            tree_.erase(op.id);
            const std::uint64_t used = tree_.last_costs().delete_cost;
            report_.worst_delete_use = std::max(report_.worst_delete_use, double(used) / double(bound));
            if (used > bound) {
                ++report_.delete_cost_failures;
                note(where + ": delete cost " + std::to_string(used) + " > " + std::to_string(bound));
            }
            break;
        }
        case 'Q': {
            ++report_.queries;
            const SearchResult r = tree_.search(op.id);
            const bool member = r.found && r.node == op.id;
            if (member != h.contains(op.id) || r.stats.edge_queries > tree_.height()) {
                ++report_.search_failures;
                note(where + ": membership answer or cost wrong");
            }
            return;
        }
        default:
            throw Error(ErrorCode::Parse, std::string("unknown op ") + op.kind);
        }
    } catch (const Error& e) {
        ++report_.errors;
        note(where + ": " + e.what());
        return;
    }
    check_all(where);
}

void TraceChecker::check_all(const std::string& where) {
    const HasseDiagram& h = tree_.hasse();
    const RebuildCheck rc = check_rebuild(tree_);
    if (!rc.equal) {
        ++report_.rebuild_failures;
        note(where + ": rebuild mismatch\n" + rc.diff);
    }
    for (const std::string& v : tree_.audit()) {
        if (v.rfind("lemma3:", 0) == 0) ++report_.lemma3_failures;
        else ++report_.audit_failures;
        note(where + ": " + v);
    }
    const std::uint32_t height = tree_.height();
    for (Element u = 0; u < universe_.size(); ++u) {
        const SearchResult r = tree_.search(u, true);
        if (std::string v = tree_.search_path_violation(r); !v.empty()) {
            ++report_.lemma2_failures;
            note(where + ": search " + std::to_string(u) + ": " + v);
        }
        const Element pred = r.found ? r.node : r.upper;
        if (pred != h.predecessor_in_S(u) || (r.found && r.node == u) != h.contains(u) ||
            r.stats.edge_queries > height) {
            ++report_.search_failures;
            note(where + ": search " + std::to_string(u) + " gave " + std::to_string(pred) + " (expected " +
                 std::to_string(h.predecessor_in_S(u)) + ") with " + std::to_string(r.stats.edge_queries) +
                 " queries, height " + std::to_string(height));
        }
    }
    // Edge-query agreement on a few random (x, y, u) triples of this state.
    const auto members = h.members();
    if (members.size() < 2) return;
    for (int i = 0; i < 4; ++i) {
        const Element x = members[splitmix(rng_state_) % members.size()];
        const Element y = members[splitmix(rng_state_) % members.size()];
        const Element u = static_cast<Element>(splitmix(rng_state_) % universe_.size());
        if (x == y) continue;
        ++report_.edge_checks;
        if (edge_query_fast(h, x, y, u) != edge_query_brute(h, x, y, u)) {
            ++report_.edge_failures;
            note(where + ": edge query disagreement");
        }
    }
}

VerifyReport replay_trace(const UniverseTree& universe, const std::vector<TraceOp>& ops) {
    VerifyReport report;
    report.traces = 1;
    TraceChecker checker(universe, report);
    for (const TraceOp& op : ops) checker.apply(op);
    report.coverage = checker.tree().coverage();
    return report;
}

std::vector<TraceOp> random_trace(const UniverseTree& universe, std::size_t ops, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<TraceOp> out;
    if (universe.size() < 2) return out;
    std::vector<char> member(universe.size(), 0);
    member[0] = 1;
    // Insert-heavy at first so the set grows, then balanced churn.
    for (std::size_t i = 0; i < ops; ++i) {
        const Element x = static_cast<Element>(1 + rng() % (universe.size() - 1));
        const unsigned roll = static_cast<unsigned>(rng() % 10);
        if (roll == 0) {
            out.push_back({'Q', static_cast<Element>(rng() % universe.size())});
        } else if (!member[x]) {
            out.push_back({'I', x});
            member[x] = 1;
        } else if (roll < 5 || i > ops / 2) {
            out.push_back({'D', x});
            member[x] = 0;
        } else {
            out.push_back({'Q', x});
        }
    }
    return out;
}

VerifyReport run_verify(const VerifyConfig& config) {
    if (config.max_universe < 2) throw Error(ErrorCode::Config, "max universe size must be at least 2");
    VerifyReport report;
    for (std::size_t t = 0; t < config.traces; ++t) {
        const std::uint64_t s = derive_seed(config.seed, t);
        std::mt19937_64 rng(s);
        const std::size_t m = 2 + rng() % (config.max_universe - 1);
        const UniverseTree universe = gen_increasing_tree(m, rng());
        const auto ops = random_trace(universe, config.ops, rng());
        TraceChecker checker(universe, report, rng());
        for (const TraceOp& op : ops) checker.apply(op);
        report.coverage.add(checker.tree().coverage());
        ++report.traces;
    }
    return report;
}

}  // namespace llt
