#pragma once

#include <iosfwd>

#include "bct/decomp.hpp"
#include "bct/hirsch.hpp"
#include "bct/map.hpp"

namespace bct {

// Text formats. All are line-based with a "<kind> 1" version header and '#'
// comments; rationals serialize as "p" or "p/q". Omitted blocks are zero.
//
//   .bcx   bicomplex     block p q dim / del p q + rows / delbar p q + rows
//   .bmap  bicomplex map source path / target path / block p q + rows
//   .cbba  algebra       truncate N / gen name p q / del name = expr
//   .hext  extension     base path / coeff path / theta i j = expr / phi i = expr
//   .cmap  algebra map   source path / target path / map name = expr
//   .rmap  reduced-cone  source path / target path / phi p q + rows / phibar p q + rows

// With check set, invalid bicomplexes are rejected as parse errors; the
// validate verb parses unchecked and reports the diagnostics itself.
Bicomplex parse_bicomplex(std::istream& in, const std::string& filename, bool check = true);
Bicomplex load_bicomplex(const std::string& path);
std::string serialize_bicomplex(const Bicomplex& b);

BicomplexMap load_bicomplex_map(const std::string& path, bool check = true);

TruncatedCbba parse_cbba(std::istream& in, const std::string& filename);
TruncatedCbba load_cbba(const std::string& path);
std::string serialize_cbba(const TruncatedCbba& a);

HirschExtension load_hirsch_extension(const std::string& path);

CbbaMap load_cbba_map(const std::string& path, TruncatedCbba& src_storage,
                      TruncatedCbba& tgt_storage);

struct ReducedConeInput {
    Bicomplex v, w;
    std::map<Bidegree, RatMatrix> phi, phibar;
};
ReducedConeInput load_reduced_cone(const std::string& path);

// Algebra-element expressions: sums of terms "[±] [coeff] name[^k] ...",
// e.g. "3/2 x^2 y - w + 1".
AlgebraElement parse_algebra_expr(const TruncatedCbba& alg, const std::string& expr,
                                  const std::string& context);
std::string algebra_expr_str(const TruncatedCbba& alg, const AlgebraElement& e);

// Deterministic report: text plus a JSON mirror; no timestamps anywhere.
struct Report {
    bool ok = true;
    int exit_code = 0;  // 0 ok, 1 mathematical failure, 2 input error
    std::string text;
    std::string json;
};

std::string dims_grid(const std::map<Bidegree, int>& dims);

}  // namespace bct
