#include "prym/census.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "prym/rng.hpp"

namespace prym {

Rat formula_smooth(std::int64_t p) { return Rat((p - 3) * (p - 1) * (p - 1) * (p + 1), 384); }

Rat formula_reducible(std::int64_t p) { return Rat((p + 1) * (p - 1) * (p - 1), 192); }

Rat formula_total(std::int64_t p) { return Rat((p - 1) * (p - 1) * (p * p - 1), 384); }

namespace {

CensusBlock run_block(const SupersingularCurve& sc, std::uint64_t seed) {
    CensusBlock block;
    block.j = sc.j;
    block.aut_order_e = sc.aut_order;
    block.model = standard_supersingular_model(sc.j);
    PrymFiberSystem sys = build_system(block.model);
    const std::int64_t p = sys.p;

    SolveResult sol = solve_fiber(sys, seed);

    // branch 4-set of E over its splitting field and the symmetry group there
    int s_deg = branch_splitting_degree(block.model, subseed(seed, "branch"));
    FieldCtx gctx = s_deg == 1 ? FieldContext::prime_field(p)
                               : make_extension(p, s_deg, subseed(seed, "branch-ctx"));
    std::vector<PointP1> four_set;
    for (auto& [r, mult] : roots_in(block.model, gctx, subseed(seed, "branch-roots"))) {
        (void)mult;
        four_set.push_back(PointP1::finite(r));
    }
    if (block.model.degree() == 3) four_set.push_back(PointP1::inf(gctx));
    std::vector<MobiusMap> group = symmetry_group(four_set);
    const int n = static_cast<int>(group.size());
    block.group_order = n;

    // The group acts on closed points (Frobenius orbits commute with the
    // action); each G-orbit of closed points is one Galois cycle of
    // isomorphism classes.
    std::map<std::string, int> index;
    for (size_t i = 0; i < sol.points.size(); ++i) index[sol.points[i].key] = static_cast<int>(i);
    std::map<int, FieldCtx> act_ctx;     // shared per joint degree
    std::map<int, std::vector<MobiusMap>> group_in; // group lifted per joint degree
    auto joint = [&](int deg) -> FieldCtx {
        auto it = act_ctx.find(deg);
        if (it != act_ctx.end()) return it->second;
        FieldCtx c = deg == 1 ? FieldContext::prime_field(p)
                              : (deg == gctx->k ? gctx
                                                : make_extension(p, deg, subseed(seed, "act")));
        act_ctx.emplace(deg, c);
        return c;
    };
    auto group_at = [&](const FieldCtx& c) -> const std::vector<MobiusMap>& {
        auto it = group_in.find(c->k);
        if (it != group_in.end()) return it->second;
        std::vector<MobiusMap> lifted;
        lifted.reserve(group.size());
        for (const auto& g : group) lifted.push_back(g.lifted(c));
        return group_in.emplace(c->k, std::move(lifted)).first->second;
    };
    auto image_pair = [&](const SolutionPoint& pt, const MobiusMap& g_lifted,
                          const FieldCtx& c) -> std::pair<FieldElement, FieldElement> {
        FieldElement a = pt.small_ctx->same(*c) ? pt.a_small : embed(pt.a_small, c);
        FieldElement b = pt.small_ctx->same(*c) ? pt.b_small : embed(pt.b_small, c);
        return act_on_pair(g_lifted, a, b);
    };

    std::vector<bool> seen(sol.points.size(), false);
    block.subtotal = Rat(0);
    for (size_t start = 0; start < sol.points.size(); ++start) {
        if (seen[start]) continue;
        // BFS over closed points
        std::vector<int> packet{static_cast<int>(start)};
        seen[start] = true;
        std::vector<int> stack{static_cast<int>(start)};
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            const SolutionPoint& pt = sol.points[cur];
            int jd = static_cast<int>(std::lcm<std::int64_t>(pt.small_ctx->k, gctx->k));
            FieldCtx c = joint(jd);
            const auto& gl = group_at(c);
            for (const auto& g : gl) {
                auto [ia, ib] = image_pair(pt, g, c);
                auto it = index.find(closed_point_key(ia, ib));
                if (it == index.end())
                    throw std::logic_error("census: solution set not closed under the group");
                if (!seen[it->second]) {
                    seen[it->second] = true;
                    packet.push_back(it->second);
                    stack.push_back(it->second);
                }
            }
        }
        std::sort(packet.begin(), packet.end());
        const SolutionPoint& rep = sol.points[packet.front()];
        // geometric stabilizer of the representative point
        int jd = static_cast<int>(std::lcm<std::int64_t>(rep.small_ctx->k, gctx->k));
        FieldCtx c = joint(jd);
        const auto& gl = group_at(c);
        FieldElement ra = rep.small_ctx->same(*c) ? rep.a_small : embed(rep.a_small, c);
        FieldElement rb = rep.small_ctx->same(*c) ? rep.b_small : embed(rep.b_small, c);
        int stab = 0;
        for (const auto& g : gl) {
            auto [ia, ib] = act_on_pair(g, ra, rb);
            if (ia == ra && ib == rb) ++stab;
        }
        if (n % stab != 0) throw std::logic_error("census: stabilizer does not divide |G|");
        int orbit_size = n / stab;
        int total_geometric = 0;
        for (int idx : packet) total_geometric += sol.points[idx].residue_degree;
        if (total_geometric % orbit_size != 0)
            throw std::logic_error("census: packet size incompatible with the orbit size");
        int galois_length = total_geometric / orbit_size;

        OrbitClassReport cls;
        cls.rep_a = rep.a_small;
        cls.rep_b = rep.b_small;
        cls.rep_a_minpoly = min_poly(rep.a_small);
        cls.rep_b_minpoly = min_poly(rep.b_small);
        cls.orbit_size = orbit_size;
        cls.stabilizer = stab;
        cls.aut = 2 * stab;
        cls.a_number = solution_a_number(sys, rep);
        cls.multiplicity = local_multiplicity(sys, rep).multiplicity;
        cls.galois_length = galois_length;
        cls.contribution = Rat(cls.multiplicity, cls.aut);
        for (int copy = 0; copy < galois_length; ++copy) {
            block.subtotal += cls.contribution;
            block.classes.push_back(cls);
        }
    }
    return block;
}

} // namespace

CensusReport run_census(std::int64_t p, std::uint64_t seed, std::int64_t max_p) {
    if (p == 2 || !is_prime(p)) throw std::invalid_argument("census requires an odd prime");
    if (p > max_p) throw std::invalid_argument("census prime exceeds the desk-scale guard");
    CensusReport rep;
    rep.p = p;
    rep.seed = seed;
    rep.formula_smooth_value = formula_smooth(p);
    rep.formula_reducible_value = formula_reducible(p);
    rep.formula_total_value = formula_total(p);

    auto ss = enumerate_supersingular(p);
    rep.mass = Rat(0);
    for (const auto& sc : ss) rep.mass += Rat(1, sc.aut_order);
    // ordered pair of supersingular curves, a point of order 2 on the first
    rep.reducible_total = Rat(3) * Rat(p + 1) * rep.mass * rep.mass;

    rep.smooth_total = Rat(0);
    for (const auto& sc : ss) {
        CensusBlock block = run_block(sc, seed);
        rep.smooth_total += block.subtotal;
        rep.blocks.push_back(std::move(block));
    }
    rep.grand_total = rep.smooth_total + rep.reducible_total;
    rep.matches = rep.smooth_total == rep.formula_smooth_value &&
                  rep.reducible_total == rep.formula_reducible_value;
    return rep;
}

namespace {

std::string join_ints(const std::vector<std::int64_t>& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

std::string poly_ints(const Poly& f) {
    std::vector<std::int64_t> v;
    for (int i = 0; i <= f.degree(); ++i) v.push_back(f.coeff(i).coeff(0));
    return join_ints(v);
}

} // namespace

std::string serialize_report(const CensusReport& r, ReportFormat f) {
    if (f == ReportFormat::Text) {
        std::ostringstream os;
        os << "census p=" << r.p << " seed=" << r.seed << "\n";
        os << "supersingular mass = " << r.mass.str() << "\n";
        for (const auto& b : r.blocks) {
            os << "block j=" << b.j.str() << " model=" << b.model.str()
               << " |Aut(E)|=" << b.aut_order_e << " group_order=" << b.group_order << "\n";
            for (const auto& c : b.classes) {
                os << "  class rep_a_minpoly=" << poly_ints(c.rep_a_minpoly)
                   << " rep_b_minpoly=" << poly_ints(c.rep_b_minpoly)
                   << " orbit=" << c.orbit_size << " stab=" << c.stabilizer << " aut=" << c.aut
                   << " a_number=" << c.a_number << " m=" << c.multiplicity
                   << " galois=" << c.galois_length << " contribution=" << c.contribution.str()
                   << "\n";
            }
            os << "  subtotal = " << b.subtotal.str() << "\n";
        }
        os << "smooth_total = " << r.smooth_total.str() << "\n";
        os << "reducible_total = " << r.reducible_total.str() << "\n";
        os << "grand_total = " << r.grand_total.str() << "\n";
        os << "formula_smooth = " << r.formula_smooth_value.str() << "\n";
        os << "formula_reducible = " << r.formula_reducible_value.str() << "\n";
        os << "formula_total = " << r.formula_total_value.str() << "\n";
        os << "matches = " << (r.matches ? "true" : "false") << "\n";
        return os.str();
    }
    if (f == ReportFormat::Json) {
        nlohmann::json j;
        j["p"] = r.p;
        j["seed"] = r.seed;
        j["mass"] = r.mass.str();
        j["blocks"] = nlohmann::json::array();
        for (const auto& b : r.blocks) {
            nlohmann::json jb;
            jb["j"] = b.j.coeffs();
            jb["model"] = b.model.str();
            jb["aut_e"] = b.aut_order_e;
            jb["group_order"] = b.group_order;
            jb["classes"] = nlohmann::json::array();
            for (const auto& c : b.classes) {
                nlohmann::json jc;
                jc["rep_a_minpoly"] = poly_ints(c.rep_a_minpoly);
                jc["rep_b_minpoly"] = poly_ints(c.rep_b_minpoly);
                jc["orbit_size"] = c.orbit_size;
                jc["stabilizer"] = c.stabilizer;
                jc["aut"] = c.aut;
                jc["a_number"] = c.a_number;
                jc["multiplicity"] = c.multiplicity;
                jc["galois_length"] = c.galois_length;
                jc["contribution"] = c.contribution.str();
                jb["classes"].push_back(std::move(jc));
            }
            jb["subtotal"] = b.subtotal.str();
            j["blocks"].push_back(std::move(jb));
        }
        j["smooth_total"] = r.smooth_total.str();
        j["reducible_total"] = r.reducible_total.str();
        j["grand_total"] = r.grand_total.str();
        j["formula_smooth"] = r.formula_smooth_value.str();
        j["formula_reducible"] = r.formula_reducible_value.str();
        j["formula_total"] = r.formula_total_value.str();
        j["matches"] = r.matches;
        return j.dump(2) + "\n";
    }
    // CSV: one row per orbit class
    std::ostringstream os;
    os << "p,block_j,group_order,rep_a_minpoly,rep_b_minpoly,orbit_size,stabilizer,aut,"
          "a_number,multiplicity,galois_length,contribution\n";
    for (const auto& b : r.blocks)
        for (const auto& c : b.classes) {
            os << r.p << "," << "\"" << b.j.str() << "\"" << "," << b.group_order << ","
               << "\"" << poly_ints(c.rep_a_minpoly) << "\"" << ","
               << "\"" << poly_ints(c.rep_b_minpoly) << "\"" << "," << c.orbit_size << ","
               << c.stabilizer << "," << c.aut << "," << c.a_number << "," << c.multiplicity
               << "," << c.galois_length << "," << "\"" << c.contribution.str() << "\"\n";
        }
    return os.str();
}

} // namespace prym
