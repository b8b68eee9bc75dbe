#include "bct/io.hpp"

#include <fstream>
#include <sstream>

namespace bct {

namespace {

struct LineReader {
    std::istream& in;
    std::string filename;
    int lineno = 0;

    // next nonempty, non-comment line split into tokens
    bool next(std::vector<std::string>& toks, std::string* raw = nullptr) {
        std::string line;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            std::istringstream ls(line);
            toks.clear();
            std::string t;
            while (ls >> t) toks.push_back(t);
            if (!toks.empty()) {
                if (raw) *raw = line;
                return true;
            }
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::runtime_error(filename + ":" + std::to_string(lineno) + ": " + msg);
    }
};

int parse_int(LineReader& r, const std::string& tok) {
    try {
        size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) r.fail("malformed integer '" + tok + "'");
        return v;
    } catch (const std::runtime_error&) {
        throw;
    } catch (const std::exception&) {
        r.fail("malformed integer '" + tok + "'");
    }
}

Rational parse_rat(LineReader& r, const std::string& tok) {
    try {
        return parse_rational(tok);
    } catch (const std::exception& e) {
        r.fail(e.what());
    }
}

RatMatrix read_matrix(LineReader& r, int rows, int cols) {
    RatMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        std::vector<std::string> toks;
        if (!r.next(toks)) r.fail("unexpected end of file inside a matrix");
        if (static_cast<int>(toks.size()) != cols)
            r.fail("expected " + std::to_string(cols) + " entries, got " +
                   std::to_string(toks.size()));
        for (int j = 0; j < cols; ++j) m.at(i, j) = parse_rat(r, toks[j]);
    }
    return m;
}

std::string dir_of(const std::string& path) {
    auto pos = path.find_last_of('/');
    if (pos == std::string::npos) return "";
    return path.substr(0, pos + 1);
}

std::string resolve(const std::string& base_file, const std::string& ref) {
    if (!ref.empty() && ref.front() == '/') return ref;
    return dir_of(base_file) + ref;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return f;
}

}  // namespace

Bicomplex parse_bicomplex(std::istream& in, const std::string& filename, bool check) {
    LineReader r{in, filename};
    std::vector<std::string> toks;
    if (!r.next(toks) || toks.size() != 2 || toks[0] != "bcx" || toks[1] != "1")
        r.fail("expected header 'bcx 1'");
    Bicomplex b;
    std::map<Bidegree, bool> seen_del, seen_delbar;
    while (r.next(toks)) {
        if (toks[0] == "block") {
            if (toks.size() != 4) r.fail("block needs: block p q dim");
            Bidegree bd{parse_int(r, toks[1]), parse_int(r, toks[2])};
            int d = parse_int(r, toks[3]);
            if (d < 0) r.fail("negative dimension");
            if (b.dim(bd) > 0) r.fail("block " + bd.str() + " declared twice");
            b.set_dim(bd, d);
        } else if (toks[0] == "del" || toks[0] == "delbar") {
            bool bar = toks[0] == "delbar";
            if (toks.size() != 3) r.fail(toks[0] + " needs: " + toks[0] + " p q");
            Bidegree bd{parse_int(r, toks[1]), parse_int(r, toks[2])};
            auto& seen = bar ? seen_delbar : seen_del;
            if (seen.count(bd)) r.fail(toks[0] + " block at " + bd.str() + " declared twice");
            seen[bd] = true;
            Bidegree tgt = bar ? dq(bd) : dp(bd);
            RatMatrix m = read_matrix(r, b.dim(tgt), b.dim(bd));
            if (m.rows() == 0 || m.cols() == 0)
                r.fail(toks[0] + " block at " + bd.str() + " has a zero-dimensional side");
            if (bar)
                b.set_delbar(bd, std::move(m));
            else
                b.set_del(bd, std::move(m));
        } else {
            r.fail("unknown directive '" + toks[0] + "'");
        }
    }
    b.normalize();
    if (check) {
        Diagnostics diag = b.validate();
        if (!diag.ok()) throw std::runtime_error(filename + ": invalid bicomplex:\n" + diag.str());
    }
    return b;
}

Bicomplex load_bicomplex(const std::string& path) {
    std::ifstream f = open_or_throw(path);
    return parse_bicomplex(f, path);
}

std::string serialize_bicomplex(const Bicomplex& b) {
    std::ostringstream os;
    os << "bcx 1\n";
    for (const auto& [bd, d] : b.dims()) os << "block " << bd.p << " " << bd.q << " " << d << "\n";
    auto emit = [&](bool bar) {
        for (const auto& [bd, d] : b.dims()) {
            RatMatrix m = bar ? b.delbar_block(bd) : b.del_block(bd);
            if (m.is_zero() || m.rows() == 0) continue;
            os << (bar ? "delbar " : "del ") << bd.p << " " << bd.q << "\n";
            for (int i = 0; i < m.rows(); ++i) {
                for (int j = 0; j < m.cols(); ++j)
                    os << (j ? " " : "") << rational_str(m.at(i, j));
                os << "\n";
            }
        }
    };
    emit(false);
    emit(true);
    return os.str();
}

BicomplexMap load_bicomplex_map(const std::string& path, bool check) {
    std::ifstream f = open_or_throw(path);
    LineReader r{f, path};
    std::vector<std::string> toks;
    if (!r.next(toks) || toks.size() != 2 || toks[0] != "bmap" || toks[1] != "1")
        r.fail("expected header 'bmap 1'");
    BicomplexMap m;
    bool have_src = false, have_tgt = false;
    while (r.next(toks)) {
        if (toks[0] == "source") {
            if (toks.size() != 2) r.fail("source needs a path");
            m.source = load_bicomplex(resolve(path, toks[1]));
            have_src = true;
        } else if (toks[0] == "target") {
            if (toks.size() != 2) r.fail("target needs a path");
            m.target = load_bicomplex(resolve(path, toks[1]));
            have_tgt = true;
        } else if (toks[0] == "block") {
            if (!have_src || !have_tgt) r.fail("blocks must follow source and target");
            if (toks.size() != 3) r.fail("block needs: block p q");
            Bidegree bd{parse_int(r, toks[1]), parse_int(r, toks[2])};
            m.set_block(bd, read_matrix(r, m.target.dim(bd), m.source.dim(bd)));
        } else {
            r.fail("unknown directive '" + toks[0] + "'");
        }
    }
    if (!have_src || !have_tgt) r.fail("map file needs source and target");
    m.normalize();
    if (check) {
        Diagnostics diag = validate_map(m);
        if (!diag.ok()) throw std::runtime_error(path + ": invalid bicomplex map:\n" + diag.str());
    }
    return m;
}

AlgebraElement parse_algebra_expr(const TruncatedCbba& alg, const std::string& expr,
                                  const std::string& context) {
    auto fail = [&](const std::string& msg) -> void {
        throw std::runtime_error(context + ": " + msg + " in '" + expr + "'");
    };
    std::istringstream is(expr);
    std::vector<std::string> toks;
    std::string t;
    while (is >> t) toks.push_back(t);
    AlgebraElement out;
    size_t i = 0;
    bool first = true;
    while (i < toks.size()) {
        Rational sign(1);
        if (toks[i] == "+" || toks[i] == "-") {
            if (toks[i] == "-") sign = -1;
            ++i;
            if (i >= toks.size()) fail("dangling sign");
        } else if (!first) {
            fail("terms must be separated by + or -");
        }
        first = false;
        Rational coeff(1);
        bool have_any = false;
        Monomial m(alg.generators().size(), 0);
        // optional leading coefficient
        if (i < toks.size() && (std::isdigit(toks[i][0]) || toks[i][0] == '-')) {
            coeff = parse_rational(toks[i]);
            have_any = true;
            ++i;
        }
        // generator powers until next +/- or end
        while (i < toks.size() && toks[i] != "+" && toks[i] != "-") {
            std::string name = toks[i];
            int exp = 1;
            auto caret = name.find('^');
            if (caret != std::string::npos) {
                exp = std::stoi(name.substr(caret + 1));
                name = name.substr(0, caret);
            }
            int gi = alg.gen_index(name);
            if (gi < 0) fail("unknown generator '" + name + "'");
            if (exp < 0) fail("negative exponent");
            m[gi] += exp;
            have_any = true;
            ++i;
        }
        if (!have_any) fail("empty term");
        // reject monomials killed by oddness or the cutoff
        for (size_t g = 0; g < m.size(); ++g)
            if (alg.generators()[g].bd.total() % 2 == 1 && m[g] > 1)
                fail("odd generator squared");
        if (alg.mono_total(m) > alg.truncation()) fail("monomial above the truncation degree");
        out.add_term(m, sign * coeff);
    }
    return out;
}

std::string algebra_expr_str(const TruncatedCbba& alg, const AlgebraElement& e) {
    if (e.is_zero()) return "0";
    std::string s;
    for (const auto& [m, c] : e.terms) {
        Rational a = c;
        if (s.empty()) {
            if (a < 0) {
                s += "- ";
                a = -a;
            }
        } else {
            s += (a < 0) ? " - " : " + ";
            if (a < 0) a = -a;
        }
        std::string mono = alg.mono_str(m);
        if (a != 1 || mono == "1") {
            s += rational_str(a);
            if (mono != "1") s += " ";
        }
        if (mono != "1") s += mono;
    }
    return s;
}

TruncatedCbba parse_cbba(std::istream& in, const std::string& filename) {
    LineReader r{in, filename};
    std::vector<std::string> toks;
    if (!r.next(toks) || toks.size() != 2 || toks[0] != "cbba" || toks[1] != "1")
        r.fail("expected header 'cbba 1'");
    int trunc = -1;
    std::vector<Generator> gens;
    struct Deferred {
        bool bar;
        std::string name;
        std::string expr;
        int lineno;
    };
    std::vector<Deferred> dexprs;
    std::string raw;
    while (r.next(toks, &raw)) {
        if (toks[0] == "truncate") {
            if (toks.size() != 2) r.fail("truncate needs a degree");
            trunc = parse_int(r, toks[1]);
        } else if (toks[0] == "gen") {
            if (toks.size() != 4) r.fail("gen needs: gen name p q");
            gens.push_back({toks[1], {parse_int(r, toks[2]), parse_int(r, toks[3])}});
        } else if (toks[0] == "del" || toks[0] == "delbar") {
            if (toks.size() < 3 || toks[2] != "=") r.fail(toks[0] + " needs: " + toks[0] + " name = expr");
            auto eq = raw.find('=');
            dexprs.push_back({toks[0] == "delbar", toks[1], raw.substr(eq + 1), r.lineno});
        } else {
            r.fail("unknown directive '" + toks[0] + "'");
        }
    }
    if (trunc < 0) r.fail("missing 'truncate' directive");
    TruncatedCbba alg(gens, trunc);
    for (const auto& d : dexprs) {
        int gi = alg.gen_index(d.name);
        if (gi < 0)
            throw std::runtime_error(filename + ":" + std::to_string(d.lineno) +
                                     ": unknown generator '" + d.name + "'");
        AlgebraElement e = parse_algebra_expr(alg, d.expr, filename + ":" + std::to_string(d.lineno));
        if (d.bar)
            alg.set_delbar_gen(gi, e);
        else
            alg.set_del_gen(gi, e);
    }
    Diagnostics diag = alg.validate();
    if (!diag.ok()) throw std::runtime_error(filename + ": invalid cbba:\n" + diag.str());
    return alg;
}

TruncatedCbba load_cbba(const std::string& path) {
    std::ifstream f = open_or_throw(path);
    return parse_cbba(f, path);
}

std::string serialize_cbba(const TruncatedCbba& a) {
    std::ostringstream os;
    os << "cbba 1\n";
    os << "truncate " << a.truncation() << "\n";
    for (const auto& g : a.generators())
        os << "gen " << g.name << " " << g.bd.p << " " << g.bd.q << "\n";
    for (size_t i = 0; i < a.generators().size(); ++i) {
        if (!a.del_gen(static_cast<int>(i)).is_zero())
            os << "del " << a.generators()[i].name << " = "
               << algebra_expr_str(a, a.del_gen(static_cast<int>(i))) << "\n";
        if (!a.delbar_gen(static_cast<int>(i)).is_zero())
            os << "delbar " << a.generators()[i].name << " = "
               << algebra_expr_str(a, a.delbar_gen(static_cast<int>(i))) << "\n";
    }
    return os.str();
}

HirschExtension load_hirsch_extension(const std::string& path) {
    std::ifstream f = open_or_throw(path);
    LineReader r{f, path};
    std::vector<std::string> toks;
    if (!r.next(toks) || toks.size() != 2 || toks[0] != "hext" || toks[1] != "1")
        r.fail("expected header 'hext 1'");
    HirschExtension e;
    bool have_base = false, have_v = false;
    int n = 0;
    std::string raw;
    std::vector<Bidegree> flat;
    auto vidx = [&](LineReader& rr, int p, int q, int k) {
        int idx = 0;
        for (const auto& bd : flat) {
            if (bd == Bidegree{p, q} && k-- == 0) return idx;
            ++idx;
        }
        rr.fail("no basis vector " + std::to_string(k) + " at (" + std::to_string(p) + "," +
                std::to_string(q) + ")");
        return -1;
    };
    while (r.next(toks, &raw)) {
        if (toks[0] == "base") {
            if (toks.size() != 2) r.fail("base needs a path");
            e.base = load_cbba(resolve(path, toks[1]));
            have_base = true;
        } else if (toks[0] == "coeff") {
            if (toks.size() != 2) r.fail("coeff needs a path");
            e.v = load_bicomplex(resolve(path, toks[1]));
            for (const auto& [bd, d] : e.v.dims())
                for (int k = 0; k < d; ++k) flat.push_back(bd);
            n = static_cast<int>(flat.size());
            e.sys = zero_system(n);
            e.phi.assign(n, {});
            e.phibar.assign(n, {});
            have_v = true;
        } else if (toks[0] == "theta" || toks[0] == "thetabar") {
            if (!have_base || !have_v) r.fail("theta entries must follow base and coeff");
            if (toks.size() < 9 || toks[7] != "=")
                r.fail(toks[0] + " needs: " + toks[0] + " p q k p' q' k' = expr");
            int j = vidx(r, parse_int(r, toks[1]), parse_int(r, toks[2]), parse_int(r, toks[3]));
            int i = vidx(r, parse_int(r, toks[4]), parse_int(r, toks[5]), parse_int(r, toks[6]));
            auto eq = raw.find('=');
            AlgebraElement val = parse_algebra_expr(e.base, raw.substr(eq + 1),
                                                    path + ":" + std::to_string(r.lineno));
            if (toks[0] == "theta")
                e.sys.theta[i][j] = val;
            else
                e.sys.thetabar[i][j] = val;
        } else if (toks[0] == "phi" || toks[0] == "phibar") {
            if (!have_base || !have_v) r.fail("phi entries must follow base and coeff");
            if (toks.size() < 6 || toks[4] != "=")
                r.fail(toks[0] + " needs: " + toks[0] + " p q k = expr");
            int j = vidx(r, parse_int(r, toks[1]), parse_int(r, toks[2]), parse_int(r, toks[3]));
            auto eq = raw.find('=');
            AlgebraElement val = parse_algebra_expr(e.base, raw.substr(eq + 1),
                                                    path + ":" + std::to_string(r.lineno));
            if (toks[0] == "phi")
                e.phi[j] = val;
            else
                e.phibar[j] = val;
        } else {
            r.fail("unknown directive '" + toks[0] + "'");
        }
    }
    if (!have_base || !have_v) r.fail("extension file needs base and coeff");
    return e;
}

CbbaMap load_cbba_map(const std::string& path, TruncatedCbba& src_storage,
                      TruncatedCbba& tgt_storage) {
    std::ifstream f = open_or_throw(path);
    LineReader r{f, path};
    std::vector<std::string> toks;
    if (!r.next(toks) || toks.size() != 2 || toks[0] != "cmap" || toks[1] != "1")
        r.fail("expected header 'cmap 1'");
    CbbaMap m;
    std::string raw;
    bool have_src = false, have_tgt = false;
    while (r.next(toks, &raw)) {
        if (toks[0] == "source") {
            src_storage = load_cbba(resolve(path, toks[1]));
            m.source = &src_storage;
            m.images.assign(src_storage.generators().size(), {});
            have_src = true;
        } else if (toks[0] == "target") {
            tgt_storage = load_cbba(resolve(path, toks[1]));
            m.target = &tgt_storage;
            have_tgt = true;
        } else if (toks[0] == "map") {
            if (!have_src || !have_tgt) r.fail("map lines must follow source and target");
            if (toks.size() < 4 || toks[2] != "=") r.fail("map needs: map name = expr");
            int gi = src_storage.gen_index(toks[1]);
            if (gi < 0) r.fail("unknown source generator '" + toks[1] + "'");
            auto eq = raw.find('=');
            m.images[gi] = parse_algebra_expr(tgt_storage, raw.substr(eq + 1),
                                              path + ":" + std::to_string(r.lineno));
        } else {
            r.fail("unknown directive '" + toks[0] + "'");
        }
    }
    if (!have_src || !have_tgt) r.fail("cbba map needs source and target");
    return m;
}

ReducedConeInput load_reduced_cone(const std::string& path) {
    std::ifstream f = open_or_throw(path);
    LineReader r{f, path};
    std::vector<std::string> toks;
    if (!r.next(toks) || toks.size() != 2 || toks[0] != "rmap" || toks[1] != "1")
        r.fail("expected header 'rmap 1'");
    ReducedConeInput in;
    bool have_src = false, have_tgt = false;
    while (r.next(toks)) {
        if (toks[0] == "source") {
            in.v = load_bicomplex(resolve(path, toks[1]));
            have_src = true;
        } else if (toks[0] == "target") {
            in.w = load_bicomplex(resolve(path, toks[1]));
            have_tgt = true;
        } else if (toks[0] == "phi" || toks[0] == "phibar") {
            if (!have_src || !have_tgt) r.fail("phi blocks must follow source and target");
            if (toks.size() != 3) r.fail(toks[0] + " needs: " + toks[0] + " p q");
            Bidegree bd{parse_int(r, toks[1]), parse_int(r, toks[2])};
            bool bar = toks[0] == "phibar";
            Bidegree tgt = bar ? dq(bd) : dp(bd);
            RatMatrix mtx = read_matrix(r, in.w.dim(tgt), in.v.dim(bd));
            if (bar)
                in.phibar[bd] = std::move(mtx);
            else
                in.phi[bd] = std::move(mtx);
        } else {
            r.fail("unknown directive '" + toks[0] + "'");
        }
    }
    if (!have_src || !have_tgt) r.fail("reduced-cone file needs source and target");
    return in;
}

std::string dims_grid(const std::map<Bidegree, int>& dims) {
    if (dims.empty()) return "  (zero)\n";
    int pmin = dims.begin()->first.p, pmax = pmin;
    int qmin = dims.begin()->first.q, qmax = qmin;
    for (const auto& [bd, d] : dims) {
        pmin = std::min(pmin, bd.p);
        pmax = std::max(pmax, bd.p);
        qmin = std::min(qmin, bd.q);
        qmax = std::max(qmax, bd.q);
    }
    std::ostringstream os;
    for (int q = qmax; q >= qmin; --q) {
        os << "  q=" << q << ":";
        for (int p = pmin; p <= pmax; ++p) {
            auto it = dims.find({p, q});
            os << " " << (it == dims.end() ? 0 : it->second);
        }
        os << "\n";
    }
    os << "  p:  ";
    for (int p = pmin; p <= pmax; ++p) os << " " << p;
    os << "\n";
    return os.str();
}

}  // namespace bct
