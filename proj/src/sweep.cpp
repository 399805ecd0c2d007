#include "triflow/sweep.hpp"

#include <atomic>
#include <ostream>
#include <thread>

namespace triflow {

bool SweepRecord::falsifies() const { return admissible && !exception && !construct_verified; }

bool SweepRecord::bouchet_mismatch() const
{
    return condition2 != condition3 || condition2 != (best_k != 0);
}

bool SweepRecord::eulerian_mismatch() const
{
    return eulerian && two_nzf_criterion != two_nzf_search;
}

SweepRecord sweep_instance(const Instance & inst, std::uint64_t budget)
{
    const auto & g = inst.graph;
    SweepRecord r;
    r.n = g.vertex_count();
    r.m = g.edge_count();
    r.code = inst.code;
    r.signature = inst.signature;
    for (const auto & e : g.edges())
        r.signs.push_back(e.sign == Sign::negative ? '-' : '+');

    try {
        auto adm = is_flow_admissible(g);
        r.admissible = adm.admissible;
        r.condition2 = adm.condition2;
        r.condition3 = adm.condition3;
    }
    catch (const LemmaViolation & ex) {
        r.condition2 = !r.condition3;
        r.note = ex.what();
    }

    for (int k = 2; k <= 6; ++k) {
        auto res = search_int_knzf(g, k, budget);
        if (k == 4)
            r.k4 = res.status;
        if (res.status == SearchStatus::found) {
            r.best_k = k;
            break;
        }
        if (res.status == SearchStatus::gated) {
            r.note = "search gated at k=" + std::to_string(k);
            break;
        }
    }
    if (r.best_k != 0 && r.best_k <= 4)
        r.k4 = SearchStatus::found;

    r.exception = is_w5_star(g);
    if (r.admissible) {
        try {
            auto c = construct_4nzf(g, budget);
            r.construct = to_string(c.route);
            if (c.flow) {
                auto v = verify_flow(g, *c.flow);
                r.construct_verified = v.valid_nowhere_zero() && c.flow->k <= 4 && c.flow->kind == FlowKind::integer;
            }
        }
        catch (const Error & ex) {
            r.construct = "error";
            r.note = ex.what();
        }
    }
    else {
        r.construct = "skipped";
    }

    r.eulerian = all_degrees_even(g);
    if (r.eulerian) {
        r.two_nzf_criterion = two_nzf_eulerian(g).flow.has_value();
        auto s = search_int_knzf(g, 2, budget);
        if (s.status != SearchStatus::gated)
            r.two_nzf_search = s.status == SearchStatus::found;
    }
    return r;
}

SweepReport run_sweep(int n_max, unsigned jobs, bool force, std::uint64_t budget)
{
    auto instances = enumerate_triangularly_connected(n_max, force);
    SweepReport report;
    report.records.resize(instances.size());
    if (jobs == 0)
        jobs = std::max(1U, std::thread::hardware_concurrency());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < instances.size();)
            report.records[i] = sweep_instance(instances[i], budget);
    };
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j)
        pool.emplace_back(work);
    work();
    for (auto & t : pool)
        t.join();

    auto & s = report.summary;
    for (const auto & r : report.records) {
        ++s.instances;
        s.admissible += r.admissible;
        s.exceptions += r.exception;
        s.falsifications += r.falsifies();
        s.bouchet_mismatches += r.bouchet_mismatch();
        s.eulerian_instances += r.eulerian;
        s.eulerian_mismatches += r.eulerian_mismatch();
        s.gated += !r.note.empty() && r.note.rfind("search gated", 0) == 0;
    }
    return report;
}

namespace {

std::string tri(const std::optional<bool> & b) { return b ? (*b ? "1" : "0") : "-"; }

}  // namespace

void write_sweep_tsv(std::ostream & out, const SweepReport & report)
{
    out << "n\tm\tcode\tsignature\tsigns\tadmissible\tcond2\tcond3\tbest_k\tk4\tconstruct\tverified\texception"
           "\teulerian\ttwo_nzf_criterion\ttwo_nzf_search\tnote\n";
    for (const auto & r : report.records)
        out << r.n << '\t' << r.m << '\t' << r.code << '\t' << r.signature << '\t' << r.signs << '\t' << r.admissible
            << '\t' << r.condition2 << '\t' << r.condition3 << '\t' << r.best_k << '\t' << to_string(r.k4) << '\t'
            << r.construct << '\t' << r.construct_verified << '\t' << r.exception << '\t' << r.eulerian << '\t'
            << tri(r.two_nzf_criterion) << '\t' << tri(r.two_nzf_search) << '\t' << r.note << '\n';
}

void write_sweep_summary(std::ostream & out, const SweepSummary & s)
{
    out << "instances " << s.instances << "\nadmissible " << s.admissible << "\nexceptions " << s.exceptions
        << "\nfalsifications " << s.falsifications << "\nbouchet_mismatches " << s.bouchet_mismatches
        << "\neulerian_instances " << s.eulerian_instances << "\neulerian_mismatches " << s.eulerian_mismatches
        << "\ngated " << s.gated << '\n';
}

}  // namespace triflow
