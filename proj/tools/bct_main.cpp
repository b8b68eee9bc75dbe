#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "bct/cone.hpp"
#include "bct/io.hpp"
#include "bct/random_gen.hpp"
#include "bct/tensor_table.hpp"

using json = nlohmann::ordered_json;

namespace {

struct Output {
    std::string out_path;
    json j;
    int code = 0;

    void finish(const std::string& text) {
        std::cout << text;
        if (!out_path.empty()) {
            std::ofstream f(out_path);
            if (!f) throw std::runtime_error("cannot write " + out_path);
            f << j.dump(2) << "\n";
        }
    }
};

json dims_json(const std::map<bct::Bidegree, int>& dims) {
    json arr = json::array();
    for (const auto& [bd, d] : dims) arr.push_back({{"p", bd.p}, {"q", bd.q}, {"dim", d}});
    return arr;
}

std::string table_text(const std::string& name, const std::map<bct::Bidegree, int>& dims) {
    return name + ":\n" + bct::dims_grid(dims);
}

int run(int argc, char** argv) {
    CLI::App app{"exact invariants of finite bicomplexes and Hirsch extensions over Q"};
    app.require_subcommand(1);
    Output out;

    // ---- validate ----------------------------------------------------------
    std::string v_file;
    auto* c_validate = app.add_subcommand("validate", "check the bicomplex axioms");
    c_validate->add_option("file", v_file)->required();
    c_validate->add_option("--out", out.out_path);

    // ---- cohomology --------------------------------------------------------
    std::string coh_file, coh_kind = "all";
    auto* c_coh = app.add_subcommand("cohomology", "per-bidegree cohomology tables");
    c_coh->add_option("file", coh_file)->required();
    c_coh->add_option("--kind", coh_kind, "BC, BC_red, dot, A, A_red, Dol_del, Dol_delbar, all");
    c_coh->add_option("--out", out.out_path);

    // ---- truncate ----------------------------------------------------------
    std::string tr_file, tr_side = "below";
    int tr_degree = 0;
    auto* c_tr = app.add_subcommand("truncate", "total-degree truncation");
    c_tr->add_option("file", tr_file)->required();
    c_tr->add_option("--degree", tr_degree)->required();
    c_tr->add_option("--side", tr_side, "below (τ≤k) or above (τ≥k)");
    c_tr->add_option("--out", out.out_path);

    // ---- minimal-model / shift / sum / tensor / connectivity ---------------
    std::string mm_file;
    auto* c_mm = app.add_subcommand("minimal-model", "direct sum of the cohomology bicomplexes");
    c_mm->add_option("file", mm_file)->required();
    c_mm->add_option("--out", out.out_path);

    std::string sh_file;
    int sh_by = 1;
    auto* c_sh = app.add_subcommand("shift", "tensor with the corner shapes");
    c_sh->add_option("file", sh_file)->required();
    c_sh->add_option("--by", sh_by, "+1 or -1");
    c_sh->add_option("--out", out.out_path);

    std::string s_a, s_b;
    auto* c_sum = app.add_subcommand("sum", "direct sum of two bicomplexes");
    c_sum->add_option("a", s_a)->required();
    c_sum->add_option("b", s_b)->required();
    c_sum->add_option("--out", out.out_path);

    std::string t_a, t_b;
    auto* c_ten = app.add_subcommand("tensor", "tensor product of two bicomplexes");
    c_ten->add_option("a", t_a)->required();
    c_ten->add_option("b", t_b)->required();
    c_ten->add_option("--out", out.out_path);

    std::string cn_file;
    auto* c_conn = app.add_subcommand("connectivity", "largest k with vanishing H_A up to k");
    c_conn->add_option("file", cn_file)->required();
    c_conn->add_option("--out", out.out_path);

    // ---- decompose / classify / tensor-table -------------------------------
    std::string dc_file;
    uint64_t dc_seed = 0;
    bool dc_have_seed = false;
    int dc_dim = 24;
    auto* c_dec = app.add_subcommand("decompose", "squares plus zig-zags with basis change");
    c_dec->add_option("file", dc_file);
    c_dec->add_option("--seed", dc_seed, "randomized self-test instead of a file")
        ->each([&](const std::string&) { dc_have_seed = true; });
    c_dec->add_option("--dim", dc_dim, "total dimension bound for --seed");
    c_dec->add_option("--out", out.out_path);

    std::string cl_file;
    auto* c_cls = app.add_subcommand("classify", "identify an indecomposable zig-zag");
    c_cls->add_option("file", cl_file)->required();
    c_cls->add_option("--out", out.out_path);

    int tt_max = 3;
    auto* c_tt = app.add_subcommand("tensor-table", "verify the zig-zag tensor equivalences");
    c_tt->add_option("--max", tt_max, "parameter bound (at most 4)");
    c_tt->add_option("--out", out.out_path);

    // ---- cone / reduced-cone / map-check ------------------------------------
    std::string cone_file;
    auto* c_cone = app.add_subcommand("cone", "mapping cone of a bicomplex map");
    c_cone->add_option("map", cone_file)->required();
    c_cone->add_option("--out", out.out_path);

    std::string rc_file;
    auto* c_rc = app.add_subcommand("reduced-cone", "W ⊕ V with twisted lower-triangular differentials");
    c_rc->add_option("file", rc_file)->required();
    c_rc->add_option("--out", out.out_path);

    std::string mc_file;
    auto* c_mc = app.add_subcommand("map-check", "chain map validation, quasi-iso, connectivity");
    c_mc->add_option("map", mc_file)->required();
    c_mc->add_option("--out", out.out_path);

    // ---- cbba / hirsch ------------------------------------------------------
    std::string cv_file;
    auto* c_cv = app.add_subcommand("cbba-validate", "validate a truncated cbba");
    c_cv->add_option("file", cv_file)->required();
    c_cv->add_option("--out", out.out_path);

    std::string hv_file;
    auto* c_hv = app.add_subcommand("hirsch-validate", "validate a linear Hirsch extension");
    c_hv->add_option("file", hv_file)->required();
    c_hv->add_option("--out", out.out_path);

    std::string th_file;
    auto* c_th = app.add_subcommand("twisted-homotopy", "Bott-Chern cohomology of the twisted Hom complex");
    c_th->add_option("file", th_file)->required();
    c_th->add_option("--out", out.out_path);

    std::string ki_file;
    auto* c_ki = app.add_subcommand("k-invariant", "twisted homotopy class of (φ, φ̄)");
    c_ki->add_option("file", ki_file)->required();
    c_ki->add_option("--out", out.out_path);

    std::string ei_a, ei_b;
    auto* c_ei = app.add_subcommand("ext-iso", "decide isomorphism of two extensions");
    c_ei->add_option("a", ei_a)->required();
    c_ei->add_option("b", ei_b)->required();
    c_ei->add_option("--out", out.out_path);

    std::string ob_ext, ob_map;
    auto* c_ob = app.add_subcommand("obstruct", "extend a cbba map across an extension");
    c_ob->add_option("extension", ob_ext)->required();
    c_ob->add_option("map", ob_map)->required();
    c_ob->add_option("--out", out.out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // command-line problems are input errors
    }

    std::ostringstream text;

    if (*c_validate) {
        std::ifstream f(v_file);
        if (!f) throw std::runtime_error("cannot open " + v_file);
        bct::Bicomplex b = bct::parse_bicomplex(f, v_file, /*check=*/false);
        bct::Diagnostics diag = b.validate();
        if (!diag.ok()) {
            text << "invalid bicomplex:\n" << diag.str();
            out.j = {{"status", "fail"}, {"detail", diag.str()}};
            out.code = 1;
        } else {
            text << "valid bicomplex, total dimension " << b.total_dim() << "\n";
            text << table_text("dims", b.dims());
            out.j = {{"status", "ok"},
                     {"total_dim", b.total_dim()},
                     {"dims", dims_json(b.dims())}};
        }
    } else if (*c_coh) {
        bct::Bicomplex b = bct::load_bicomplex(coh_file);
        std::vector<bct::CohKind> kinds;
        if (coh_kind == "all") {
            for (auto k : bct::kAllCohKinds) kinds.push_back(k);
        } else {
            auto k = bct::coh_kind_from_name(coh_kind);
            if (!k) throw std::runtime_error("unknown cohomology kind '" + coh_kind + "'");
            kinds.push_back(*k);
        }
        out.j = {{"status", "ok"}, {"tables", json::object()}};
        for (auto k : kinds) {
            auto dims = bct::cohomology_dims(b, k);
            text << table_text("H_" + bct::coh_kind_name(k), dims);
            out.j["tables"][bct::coh_kind_name(k)] = dims_json(dims);
        }
    } else if (*c_tr) {
        bct::Bicomplex b = bct::load_bicomplex(tr_file);
        bct::Bicomplex res;
        if (tr_side == "below")
            res = bct::truncate_below(b, tr_degree).bc;
        else if (tr_side == "above")
            res = bct::truncate_above(b, tr_degree).bc;
        else
            throw std::runtime_error("--side must be below or above");
        text << bct::serialize_bicomplex(res);
        out.j = {{"status", "ok"}, {"dims", dims_json(res.dims())},
                 {"bicomplex", bct::serialize_bicomplex(res)}};
    } else if (*c_mm) {
        bct::Bicomplex b = bct::load_bicomplex(mm_file);
        bct::Bicomplex res = bct::minimal_model(b);
        text << bct::serialize_bicomplex(res);
        out.j = {{"status", "ok"}, {"dims", dims_json(res.dims())},
                 {"bicomplex", bct::serialize_bicomplex(res)}};
    } else if (*c_sh) {
        bct::Bicomplex b = bct::load_bicomplex(sh_file);
        if (sh_by != 1 && sh_by != -1) throw std::runtime_error("--by must be 1 or -1");
        bct::Bicomplex res = bct::shift(b, sh_by).bc;
        text << bct::serialize_bicomplex(res);
        out.j = {{"status", "ok"}, {"dims", dims_json(res.dims())},
                 {"bicomplex", bct::serialize_bicomplex(res)}};
    } else if (*c_sum) {
        bct::Bicomplex res = bct::direct_sum(bct::load_bicomplex(s_a), bct::load_bicomplex(s_b));
        text << bct::serialize_bicomplex(res);
        out.j = {{"status", "ok"}, {"bicomplex", bct::serialize_bicomplex(res)}};
    } else if (*c_ten) {
        bct::Bicomplex res = bct::tensor(bct::load_bicomplex(t_a), bct::load_bicomplex(t_b)).bc;
        text << bct::serialize_bicomplex(res);
        out.j = {{"status", "ok"}, {"bicomplex", bct::serialize_bicomplex(res)}};
    } else if (*c_conn) {
        bct::Bicomplex b = bct::load_bicomplex(cn_file);
        auto c = bct::connectivity(b);
        std::string s = c ? std::to_string(*c) : "inf";
        text << "connectivity " << s << "\n";
        out.j = {{"status", "ok"}, {"connectivity", s}};
    } else if (*c_dec) {
        bct::Bicomplex b;
        json expected = json::object();
        if (dc_have_seed) {
            bct::Rng rng(dc_seed);
            bct::ScrambledSum s = bct::random_scrambled_sum(rng, dc_dim);
            b = s.bc;
            for (const auto& [bd, n] : s.squares)
                expected["squares"].push_back({{"p", bd.p}, {"q", bd.q}, {"count", n}});
            for (const auto& [d, n] : s.zigzags)
                expected["zigzags"].push_back({{"desc", d.str()}, {"count", n}});
        } else if (!dc_file.empty()) {
            b = bct::load_bicomplex(dc_file);
        } else {
            throw std::runtime_error("decompose needs a file or --seed");
        }
        bct::Decomposition dec = bct::full_decompose(b);
        std::string why;
        bool ok = dec.verify(b, &why) && bct::reconcile_with_cohomology(dec, b, &why);
        text << "decomposition 1\n";
        for (const auto& [bd, n] : dec.square_counts())
            text << "square " << bd.p << " " << bd.q << " x" << n << "\n";
        for (const auto& [d, n] : dec.zigzag_counts()) {
            const char* fam = d.family == bct::ZigZagFamily::A   ? "A"
                              : d.family == bct::ZigZagFamily::B ? "B"
                                                                 : "C";
            text << "zigzag " << fam << " " << d.param << " " << d.anchor.p << " " << d.anchor.q
                 << " x" << n << "\n";
        }
        for (const auto& [bd, m] : dec.basis_change(b)) {
            text << "basis " << bd.p << " " << bd.q << "\n";
            for (int i = 0; i < m.rows(); ++i) {
                for (int j = 0; j < m.cols(); ++j)
                    text << (j ? " " : "") << bct::rational_str(m.at(i, j));
                text << "\n";
            }
        }
        text << (ok ? "verified exact\n" : "VERIFICATION FAILED: " + why + "\n");
        out.j = {{"status", ok ? "ok" : "fail"}};
        json sq = json::array(), zz = json::array();
        for (const auto& [bd, n] : dec.square_counts())
            sq.push_back({{"p", bd.p}, {"q", bd.q}, {"count", n}});
        for (const auto& [d, n] : dec.zigzag_counts())
            zz.push_back({{"desc", d.str()}, {"count", n}});
        out.j["squares"] = sq;
        out.j["zigzags"] = zz;
        if (dc_have_seed) {
            out.j["expected"] = expected;
            // self-test: multisets must match the construction
            bct::Rng rng(dc_seed);
            bct::ScrambledSum s = bct::random_scrambled_sum(rng, dc_dim);
            ok = ok && dec.square_counts() == s.squares && dec.zigzag_counts() == s.zigzags;
        }
        if (!ok) out.code = 1;
    } else if (*c_cls) {
        bct::Bicomplex b = bct::load_bicomplex(cl_file);
        try {
            bct::ZigZagDescriptor d = bct::classify_zigzag(b);
            text << d.str() << "\n";
            out.j = {{"status", "ok"}, {"descriptor", d.str()}};
        } catch (const std::invalid_argument& e) {
            text << "not an indecomposable zig-zag: " << e.what() << "\n";
            out.j = {{"status", "fail"}, {"detail", e.what()}};
            out.code = 1;
        }
    } else if (*c_tt) {
        if (tt_max < 1 || tt_max > 4) throw std::runtime_error("--max must be between 1 and 4");
        bct::TensorTableReport rep = bct::tensor_table(tt_max);
        json entries = json::array();
        for (const auto& e : rep.entries) {
            std::string pair = e.left.str() + " (x) " + e.right.str();
            text << pair << ": " << (e.ok ? "ok" : "MISMATCH " + e.detail);
            text << " [squares " << e.squares << ";";
            for (const auto& [d, n] : e.got) text << " " << d.str() << " x" << n;
            text << "]\n";
            json got = json::array();
            for (const auto& [d, n] : e.got) got.push_back({{"desc", d.str()}, {"count", n}});
            entries.push_back({{"left", e.left.str()},
                               {"right", e.right.str()},
                               {"ok", e.ok},
                               {"squares", e.squares},
                               {"zigzags", got}});
        }
        text << (rep.ok ? "tensor table verified\n" : "tensor table FAILED\n");
        out.j = {{"status", rep.ok ? "ok" : "fail"}, {"entries", entries}};
        if (!rep.ok) out.code = 1;
    } else if (*c_cone) {
        bct::BicomplexMap f = bct::load_bicomplex_map(cone_file);
        bct::ConeResult cr = bct::cone(f);
        text << bct::serialize_bicomplex(cr.cone);
        out.j = {{"status", "ok"}, {"dims", dims_json(cr.cone.dims())},
                 {"bicomplex", bct::serialize_bicomplex(cr.cone)}};
    } else if (*c_rc) {
        bct::ReducedConeInput in = bct::load_reduced_cone(rc_file);
        bct::Bicomplex res = bct::reduced_cone(in.v, in.w, in.phi, in.phibar);
        text << bct::serialize_bicomplex(res);
        out.j = {{"status", "ok"}, {"bicomplex", bct::serialize_bicomplex(res)}};
    } else if (*c_mc) {
        bct::BicomplexMap f = bct::load_bicomplex_map(mc_file, /*check=*/false);
        bct::Diagnostics diag = bct::validate_map(f);
        if (!diag.ok()) {
            text << "not a chain map:\n" << diag.str();
            out.j = {{"status", "fail"}, {"detail", diag.str()}};
            out.code = 1;
        } else {
            bool qi = bct::is_quasi_iso(f);
            auto conn = bct::map_connectivity(f);
            std::string cs = conn ? std::to_string(*conn) : "inf";
            text << "chain map valid\n";
            text << "quasi-isomorphism: " << (qi ? "yes" : "no") << "\n";
            text << "connectivity: " << cs << "\n";
            out.j = {{"status", "ok"}, {"quasi_iso", qi}, {"connectivity", cs}};
        }
    } else if (*c_cv) {
        bct::TruncatedCbba a = bct::load_cbba(cv_file);
        text << "valid cbba, truncation " << a.truncation() << "\n";
        text << table_text("dims", a.dims());
        auto unver = a.unverifiable_identities();
        for (const auto& s : unver) text << "note: " << s << "\n";
        text << "wedge degree bound: " << (a.wedge_degrees_ok() ? "ok" : "violated") << "\n";
        out.j = {{"status", "ok"}, {"dims", dims_json(a.dims())},
                 {"unverifiable", unver.size()}, {"wedge_ok", a.wedge_degrees_ok()}};
        if (!a.wedge_degrees_ok()) out.code = 1;
    } else if (*c_hv) {
        bct::HirschExtension e = bct::load_hirsch_extension(hv_file);
        bct::Diagnostics d = bct::validate_extension(e);
        if (d.ok()) {
            text << "valid linear Hirsch extension\n";
            out.j = {{"status", "ok"}};
        } else {
            text << d.str();
            out.j = {{"status", "fail"}, {"detail", d.str()}};
            out.code = 1;
        }
    } else if (*c_th) {
        bct::HirschExtension e = bct::load_hirsch_extension(th_file);
        bct::TwistedHom th(e.base, e.v, e.sys);
        bct::Diagnostics d = th.validate_system();
        if (!d.ok()) {
            text << d.str();
            out.j = {{"status", "fail"}, {"detail", d.str()}};
            out.code = 1;
        } else {
            auto table = th.homotopy();
            auto dims = table.dims();
            text << table_text("twisted homotopy (H_BC)", dims);
            out.j = {{"status", "ok"}, {"table", dims_json(dims)}};
        }
    } else if (*c_ki) {
        bct::HirschExtension e = bct::load_hirsch_extension(ki_file);
        bct::Diagnostics d = bct::validate_extension(e);
        if (!d.ok()) throw std::runtime_error("invalid extension:\n" + d.str());
        bct::KInvariant k = bct::k_invariant(e);
        text << "k-invariant class: [";
        for (size_t i = 0; i < k.cls.size(); ++i)
            text << (i ? " " : "") << bct::rational_str(k.cls[i]);
        text << "]\n";
        text << (k.zero ? "zero class\n" : "nonzero class\n");
        json cls = json::array();
        for (const auto& c : k.cls) cls.push_back(bct::rational_str(c));
        out.j = {{"status", "ok"}, {"class", cls}, {"zero", k.zero}};
    } else if (*c_ei) {
        bct::HirschExtension a = bct::load_hirsch_extension(ei_a);
        bct::HirschExtension b = bct::load_hirsch_extension(ei_b);
        bct::IsoResult r = bct::extensions_isomorphic(a, b);
        text << (r.isomorphic ? "isomorphic\n" : "not isomorphic\n");
        out.j = {{"status", "ok"}, {"isomorphic", r.isomorphic}};
        if (r.isomorphic) {
            json w = json::array();
            for (const auto& x : r.witness) w.push_back(bct::algebra_expr_str(a.base, x));
            out.j["witness"] = w;
            text << "witness H:";
            for (const auto& x : r.witness) text << " [" << bct::algebra_expr_str(a.base, x) << "]";
            text << "\n";
        }
    } else if (*c_ob) {
        bct::HirschExtension e = bct::load_hirsch_extension(ob_ext);
        bct::TruncatedCbba src, tgt;
        bct::CbbaMap f = bct::load_cbba_map(ob_map, src, tgt);
        bct::ObstructionResult r = bct::obstruction_extend(f, e);
        if (r.extends) {
            text << "extends\n";
            text << "witness H:";
            for (const auto& x : r.witness) text << " [" << bct::algebra_expr_str(tgt, x) << "]";
            text << "\n";
            json w = json::array();
            for (const auto& x : r.witness) w.push_back(bct::algebra_expr_str(tgt, x));
            out.j = {{"status", "ok"}, {"extends", true}, {"witness", w}};
        } else {
            text << "obstructed\n";
            text << "obstruction class: [";
            for (size_t i = 0; i < r.obstruction.size(); ++i)
                text << (i ? " " : "") << bct::rational_str(r.obstruction[i]);
            text << "]\n";
            json cls = json::array();
            for (const auto& c : r.obstruction) cls.push_back(bct::rational_str(c));
            out.j = {{"status", "ok"}, {"extends", false}, {"obstruction", cls}};
        }
    }

    out.finish(text.str());
    return out.code;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;  // mathematical failure (precondition violated)
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;  // input / IO error
    }
}
