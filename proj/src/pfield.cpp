#include "pfmat/pfield.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace pfm {

bool PfElement::is_one() const {
    if (zero) return false;
    if (pf->finite()) return unit == 1;
    if (unit != 0) return false;
    return std::all_of(exps.begin(), exps.end(), [](int e) { return e == 0; });
}

std::string PfElement::str() const { return pf->to_string(*this); }

std::string FqImage::describe() const {
    std::string s = F->name() + "[";
    for (int v = 0; v < nvars; ++v) {
        if (v) s += ",";
        s += F->elem_str(var_images[v]);
    }
    if (i_image) s += std::string(nvars ? ";" : "") + "i=" + F->elem_str(i_image);
    return s + "]";
}

PartialField::PartialField(std::string name, std::vector<std::string> vars, bool has_i)
    : name_(std::move(name)), vars_(std::move(vars)), has_i_(has_i) {
    if (vars_.size() > kMaxVars) throw error("too many variables");
}

void PartialField::rebuild_division_order() {
    division_order_.resize(gens_.size());
    std::iota(division_order_.begin(), division_order_.end(), 0);
    std::stable_sort(division_order_.begin(), division_order_.end(), [&](int a, int b) {
        return gens_[a].poly.total_degree() < gens_[b].poly.total_degree();
    });
}

int PartialField::add_generator(const std::string& name, Poly p) {
    if (p.is_zero()) throw error("zero generator");
    if (p.is_constant() && p.constant_value().is_unit()) throw error("unit generator");
    gens_.push_back({name, std::move(p)});
    rebuild_division_order();
    return int(gens_.size()) - 1;
}

void PartialField::add_image(const FiniteField& F, std::array<int, kMaxVars> var_images, int i_image) {
    FqImage img;
    img.F = &F;
    img.var_images = var_images;
    img.nvars = int(vars_.size());
    img.i_image = i_image;
    if (has_i_) {
        if (F.mul(i_image, i_image) != F.from_int(-1))
            throw error("image of i does not square to -1 in " + F.name());
    }
    for (auto& g : gens_) {
        int v = 0;
        for (auto& [m, c] : g.poly.terms()) {
            Int re = c.re % F.characteristic();
            Int im = c.im % F.characteristic();
            int t = F.from_int(re.convert_to<long long>());
            if (c.im != 0) t = F.add(t, F.mul(F.from_int(im.convert_to<long long>()), i_image));
            for (int vi = 0; vi < kMaxVars; ++vi)
                if (m.e[vi]) t = F.mul(t, F.pow(var_images[vi], m.e[vi]));
            v = F.add(v, t);
        }
        if (v == 0)
            throw error("generator " + g.name + " vanishes under image into " + F.name());
        img.gen_images.push_back(v);
    }
    images_.push_back(std::move(img));
}

int PartialField::generator_index(const std::string& name) const {
    for (size_t j = 0; j < gens_.size(); ++j)
        if (gens_[j].name == name) return int(j);
    return -1;
}

PfElement PartialField::zero() const {
    PfElement e;
    e.pf = this;
    e.zero = true;
    return e;
}

PfElement PartialField::one() const {
    PfElement e;
    e.pf = this;
    e.zero = false;
    e.unit = finite_ ? 1 : 0;
    e.exps.assign(gens_.size(), 0);
    return e;
}

PfElement PartialField::minus_one() const {
    if (finite_) return ff_value(ff_->from_int(-1));
    PfElement e = one();
    e.unit = has_i_ ? 2 : 1;
    return e;
}

PfElement PartialField::generator(int j) const {
    PfElement e = one();
    e.exps[j] = 1;
    return e;
}

PfElement PartialField::generator(const std::string& name) const {
    int j = generator_index(name);
    if (j < 0) throw error("unknown generator " + name + " in " + name_);
    return generator(j);
}

PfElement PartialField::make(int unit, const std::vector<std::pair<int, int>>& exps) const {
    PfElement e = one();
    e.unit = unit;
    for (auto& [j, k] : exps) e.exps[j] = std::int16_t(k);
    return e;
}

PfElement PartialField::ff_value(int v) const {
    if (!finite_) throw error("ff_value on symbolic field");
    PfElement e;
    e.pf = this;
    e.zero = (v == 0);
    e.unit = v;
    return e;
}

PfElement PartialField::mul(const PfElement& a, const PfElement& b) const {
    if (a.zero || b.zero) return zero();
    PfElement r = a;
    if (finite_) {
        r.unit = ff_->mul(a.unit, b.unit);
        return r;
    }
    r.unit = (a.unit + b.unit) % torsion_order();
    for (size_t j = 0; j < r.exps.size(); ++j) r.exps[j] = std::int16_t(r.exps[j] + b.exps[j]);
    return r;
}

PfElement PartialField::inv(const PfElement& a) const {
    if (a.zero) throw error("inverse of zero");
    PfElement r = a;
    if (finite_) {
        r.unit = ff_->inv(a.unit);
        return r;
    }
    int n = torsion_order();
    r.unit = (n - a.unit) % n;
    for (auto& e : r.exps) e = std::int16_t(-e);
    return r;
}

PfElement PartialField::neg(const PfElement& a) const {
    if (a.zero) return a;
    PfElement r = a;
    if (finite_) {
        r.unit = ff_->neg(a.unit);
        r.zero = (r.unit == 0);
        return r;
    }
    r.unit = (a.unit + torsion_order() / 2) % torsion_order();
    return r;
}

PfElement PartialField::pow(const PfElement& a, int k) const {
    if (a.zero) {
        if (k <= 0) throw error("zero to non-positive power");
        return a;
    }
    PfElement b = (k < 0) ? inv(a) : a;
    int n = std::abs(k);
    PfElement r = one();
    for (int i = 0; i < n; ++i) r = mul(r, b);
    return r;
}

std::pair<Poly, Poly> PartialField::expand(const PfElement& a) const {
    if (finite_) throw error("expand on finite field");
    if (a.zero) return {Poly(), Poly::constant(GInt(1))};
    GInt u(1);
    if (has_i_) {
        // i^unit
        static const GInt tab[4] = {GInt(1), GInt(Int(0), Int(1)), GInt(-1), GInt(Int(0), Int(-1))};
        u = tab[a.unit & 3];
    } else if (a.unit & 1) {
        u = GInt(-1);
    }
    Poly num = Poly::constant(u);
    Poly den = Poly::constant(GInt(1));
    for (size_t j = 0; j < a.exps.size(); ++j) {
        int e = a.exps[j];
        if (e > 0)
            num = num * gens_[j].poly.pow(e);
        else if (e < 0)
            den = den * gens_[j].poly.pow(-e);
    }
    return {num, den};
}

std::optional<PfElement> PartialField::normalize(Poly num, Poly den) const {
    if (finite_) throw error("normalize on finite field");
    if (den.is_zero()) throw error("zero denominator");
    if (num.is_zero()) return zero();
    PfElement r = one();
    for (int j : division_order_) {
        const Poly& g = gens_[j].poly;
        while (true) {
            auto q = num.div_exact(g);
            if (!q) break;
            num = std::move(*q);
            r.exps[j] = std::int16_t(r.exps[j] + 1);
        }
        while (true) {
            auto q = den.div_exact(g);
            if (!q) break;
            den = std::move(*q);
            r.exps[j] = std::int16_t(r.exps[j] - 1);
        }
    }
    if (!num.is_constant() || !den.is_constant()) return std::nullopt;
    GInt cn = num.constant_value(), cd = den.constant_value();
    if (!cn.is_unit() || !cd.is_unit()) return std::nullopt;
    int k = (cn.unit_log() - cd.unit_log() + 4) & 3;
    if (has_i_) {
        r.unit = k;
    } else {
        if (k & 1) return std::nullopt;  // stray i in an i-free field: impossible by construction
        r.unit = k == 2 ? 1 : 0;
    }
    return r;
}

std::optional<PfElement> PartialField::add(const PfElement& a, const PfElement& b) const {
    if (a.pf != b.pf || a.pf != this) throw error("mixed fields in add");
    if (a.zero) return b;
    if (b.zero) return a;
    if (finite_) return ff_value(ff_->add(a.unit, b.unit));
    auto [na, da] = expand(a);
    auto [nb, db] = expand(b);
    return normalize(na * db + nb * da, da * db);
}

std::optional<PfElement> PartialField::sub(const PfElement& a, const PfElement& b) const {
    return add(a, neg(b));
}

int PartialField::eval(const PfElement& a, const FqImage& img) const {
    const FiniteField& F = *img.F;
    if (a.zero) return 0;
    if (finite_) throw error("eval of finite-field element via image");
    int v;
    if (has_i_)
        v = F.pow(img.i_image, a.unit);
    else
        v = (a.unit & 1) ? F.from_int(-1) : 1;
    for (size_t j = 0; j < a.exps.size(); ++j)
        if (a.exps[j]) v = F.mul(v, F.pow(img.gen_images[j], a.exps[j]));
    return v;
}

u64 PartialField::eval_mod(const PfElement& a, u64 p, const std::array<u64, kMaxVars>& var_images,
                           u64 i_image) const {
    auto [num, den] = expand(a);
    u64 n = num.eval_mod(p, var_images, i_image);
    u64 d = den.eval_mod(p, var_images, i_image);
    if (d == 0) throw error("denominator vanished at evaluation point");
    // d^(p-2) mod p
    u64 inv = 1, b = d, e = p - 2;
    while (e) {
        if (e & 1) inv = (unsigned __int128)(inv)*b % p;
        b = (unsigned __int128)(b)*b % p;
        e >>= 1;
    }
    return (unsigned __int128)(n)*inv % p;
}

std::string PartialField::to_string(const PfElement& a) const {
    if (a.zero) return "0";
    if (finite_) return ff_->elem_str(a.unit);
    std::string s;
    int u = a.unit;
    if (has_i_) {
        if (u >= 2) {
            s += "-";
            u -= 2;
        }
    } else if (u == 1) {
        s += "-";
        u = 0;
    }
    std::vector<std::string> factors;
    if (u == 1) factors.push_back("i");
    for (size_t j = 0; j < a.exps.size(); ++j) {
        if (!a.exps[j]) continue;
        std::string f = gens_[j].name;
        if (a.exps[j] != 1) f += "^" + std::to_string(a.exps[j]);
        factors.push_back(f);
    }
    if (factors.empty()) return s + "1";
    for (size_t k = 0; k < factors.size(); ++k) {
        if (k) s += "*";
        s += factors[k];
    }
    return s;
}

PfElement PartialField::parse(const std::string& s) const {
    if (s == "0") return zero();
    std::string body = s;
    bool negate = false;
    if (!body.empty() && body[0] == '-') {
        // a leading minus is a sign only if the remainder still parses; generator
        // names themselves never start with '-'
        negate = true;
        body = body.substr(1);
    }
    if (finite_) {
        int v = ff_->parse_elem(body);
        if (v < 0) throw error("cannot parse '" + s + "' over " + name_);
        return negate ? neg(ff_value(v)) : ff_value(v);
    }
    PfElement r = one();
    size_t pos = 0;
    while (pos < body.size()) {
        size_t star = body.find('*', pos);
        std::string tok = body.substr(pos, star == std::string::npos ? std::string::npos : star - pos);
        pos = star == std::string::npos ? body.size() : star + 1;
        int expn = 1;
        size_t caret = tok.rfind('^');
        if (caret != std::string::npos) {
            expn = std::stoi(tok.substr(caret + 1));
            tok = tok.substr(0, caret);
        }
        if (tok == "1") {
            // unit factor, nothing to do
        } else if (tok == "i" && has_i_) {
            r.unit = (r.unit + expn % 4 + 4) % 4;
        } else {
            int j = generator_index(tok);
            if (j < 0) throw error("unknown factor '" + tok + "' over " + name_);
            r.exps[j] = std::int16_t(r.exps[j] + expn);
        }
    }
    return negate ? neg(r) : r;
}

// ---------------------------------------------------------------------------
// the named fields

namespace {
Poly v0() { return Poly::variable(0); }
Poly v1() { return Poly::variable(1); }
Poly v2() { return Poly::variable(2); }
Poly c(long long n) { return Poly::constant(GInt(n)); }
Poly ci() { return Poly::constant(GInt(Int(0), Int(1))); }
}  // namespace

const PartialField& PartialField::U2() {
    static PartialField* f = [] {
        auto* pf = new PartialField("U2", {"a1", "a2"}, false);
        pf->add_generator("a1", v0());
        pf->add_generator("a2", v1());
        pf->add_generator("a1-1", v0() - c(1));
        pf->add_generator("a2-1", v1() - c(1));
        pf->add_generator("a1-a2", v0() - v1());
        pf->add_image(FiniteField::gf(4), {2, 3, 0});   // a1 = w, a2 = w+1 (= w^2)
        pf->add_image(FiniteField::gf(5), {2, 3, 0});
        pf->add_image(FiniteField::gf(5), {3, 2, 0});
        pf->add_image(FiniteField::gf(8), {2, 4, 0});   // w, w^2
        return pf;
    }();
    return *f;
}

const PartialField& PartialField::U3() {
    static PartialField* f = [] {
        auto* pf = new PartialField("U3", {"a1", "a2", "a3"}, false);
        pf->add_generator("a1", v0());
        pf->add_generator("a2", v1());
        pf->add_generator("a3", v2());
        pf->add_generator("a1-1", v0() - c(1));
        pf->add_generator("a2-1", v1() - c(1));
        pf->add_generator("a3-1", v2() - c(1));
        pf->add_generator("a1-a2", v0() - v1());
        pf->add_generator("a1-a3", v0() - v2());
        pf->add_generator("a2-a3", v1() - v2());
        pf->add_image(FiniteField::gf(5), {2, 3, 4});
        pf->add_image(FiniteField::gf(5), {3, 4, 2});
        pf->add_image(FiniteField::gf(7), {2, 3, 5});
        return pf;
    }();
    return *f;
}

const PartialField& PartialField::H5() {
    static PartialField* f = [] {
        auto* pf = new PartialField("H5", {"a", "b", "g"}, false);
        pf->add_generator("a", v0());
        pf->add_generator("b", v1());
        pf->add_generator("g", v2());
        pf->add_generator("a-1", v0() - c(1));
        pf->add_generator("b-1", v1() - c(1));
        pf->add_generator("g-1", v2() - c(1));
        pf->add_generator("a-g", v0() - v2());
        pf->add_generator("g-ab", v2() - v0() * v1());
        pf->add_generator("ab-b-g+1", v0() * v1() - v1() - v2() + c(1));
        pf->add_image(FiniteField::gf(5), {3, 2, 2});
        pf->add_image(FiniteField::gf(5), {3, 2, 4});
        pf->add_image(FiniteField::gf(7), {2, 3, 5});
        return pf;
    }();
    return *f;
}

const PartialField& PartialField::K2() {
    static PartialField* f = [] {
        // generator set confirmed by tools/derivation/derive_generators.py:
        // every nonzero subdeterminant of the K2 catalog matrices factors as
        // ± a^x (a-1)^y (a+1)^z
        auto* pf = new PartialField("K2", {"a"}, false);
        pf->add_generator("a", v0());
        pf->add_generator("a-1", v0() - c(1));
        pf->add_generator("a+1", v0() + c(1));
        pf->add_image(FiniteField::gf(4), {2, 0, 0});  // a = w
        pf->add_image(FiniteField::gf(5), {2, 0, 0});
        pf->add_image(FiniteField::gf(5), {3, 0, 0});
        return pf;
    }();
    return *f;
}

const PartialField& PartialField::H4() {
    static PartialField* f = [] {
        // generator set confirmed by tools/derivation/derive_generators.py
        auto* pf = new PartialField("H4", {"a", "b"}, false);
        pf->add_generator("a", v0());
        pf->add_generator("b", v1());
        pf->add_generator("a-1", v0() - c(1));
        pf->add_generator("b-1", v1() - c(1));
        pf->add_generator("ab-1", v0() * v1() - c(1));
        pf->add_generator("a+b-2ab", v0() + v1() - c(2) * v0() * v1());
        pf->add_image(FiniteField::gf(5), {2, 2, 0});
        pf->add_image(FiniteField::gf(5), {3, 3, 0});
        pf->add_image(FiniteField::gf(5), {3, 4, 0});
        pf->add_image(FiniteField::gf(5), {4, 3, 0});
        return pf;
    }();
    return *f;
}

const PartialField& PartialField::H2() {
    static PartialField* f = [] {
        auto* pf = new PartialField("H2", {}, true);
        pf->add_generator("1-i", c(1) - ci());
        pf->add_image(FiniteField::gf(5), {0, 0, 0}, 2);
        pf->add_image(FiniteField::gf(5), {0, 0, 0}, 3);
        pf->add_image(FiniteField::gf(9), {0, 0, 0}, FiniteField::gf(9).x());
        return pf;
    }();
    return *f;
}

const PartialField& PartialField::GF(int q) {
    static std::map<int, PartialField*> cache;
    auto it = cache.find(q);
    if (it != cache.end()) return *it->second;
    auto* pf = new PartialField("GF(" + std::to_string(q) + ")", {}, false);
    pf->finite_ = true;
    pf->ff_ = &FiniteField::gf(q);
    cache.emplace(q, pf);
    return *pf;
}

const PartialField* PartialField::by_name(const std::string& name) {
    if (name == "U2") return &U2();
    if (name == "U3") return &U3();
    if (name == "H5") return &H5();
    if (name == "K2") return &K2();
    if (name == "H4") return &H4();
    if (name == "H2") return &H2();
    if (name.rfind("GF(", 0) == 0 && name.back() == ')')
        return &GF(std::stoi(name.substr(3, name.size() - 4)));
    return nullptr;
}

// ---------------------------------------------------------------------------
// homomorphisms

namespace {
// p composed with variable images given as fractions over the target ring
std::pair<Poly, Poly> compose_fraction(const Poly& p,
                                       const std::vector<std::pair<Poly, Poly>>& vimg) {
    std::array<int, kMaxVars> maxdeg{0, 0, 0};
    for (auto& [m, cc] : p.terms())
        for (int v = 0; v < kMaxVars; ++v) maxdeg[v] = std::max(maxdeg[v], int(m.e[v]));
    Poly num;
    for (auto& [m, cc] : p.terms()) {
        Poly t = Poly::constant(cc);
        for (int v = 0; v < kMaxVars; ++v) {
            if (v >= int(vimg.size())) continue;
            if (m.e[v]) t = t * vimg[v].first.pow(m.e[v]);
            if (maxdeg[v] - m.e[v] > 0) t = t * vimg[v].second.pow(maxdeg[v] - m.e[v]);
        }
        num = num + t;
    }
    Poly den = Poly::constant(GInt(1));
    for (int v = 0; v < kMaxVars && v < int(vimg.size()); ++v)
        if (maxdeg[v]) den = den * vimg[v].second.pow(maxdeg[v]);
    return {num, den};
}
}  // namespace

PfHom::PfHom(const PartialField& src, const PartialField& dst, std::vector<PfElement> var_images)
    : src_(&src), dst_(&dst), var_images_(std::move(var_images)) {
    if (var_images_.size() != src.variables().size())
        throw error("homomorphism needs one image per variable");
    if (src.has_i() && !dst.has_i()) throw error("not a homomorphism: no image for i");
    for (auto& e : var_images_)
        if (e.is_zero()) throw error("not a homomorphism: variable mapped to zero");
    if (dst.finite()) {
        const FiniteField& F = *dst.finite_field();
        std::array<int, kMaxVars> vv{};
        for (size_t v = 0; v < var_images_.size(); ++v) vv[v] = var_images_[v].unit;
        for (int j = 0; j < src.generator_count(); ++j) {
            int val = 0;
            for (const auto& [m, c] : src.generator_poly(j).terms()) {
                if (c.im != 0) throw error("not a homomorphism: Gaussian coefficient over " + dst.name());
                int t = F.from_int(int(c.re % F.characteristic()));
                for (int v = 0; v < kMaxVars; ++v)
                    for (int e = 0; e < m.e[v]; ++e) t = F.mul(t, vv[v]);
                val = F.add(val, t);
            }
            if (val == 0)
                throw error("not a homomorphism: generator " + src.generator_name(j) +
                            " has no unit image");
            gen_images_.push_back(dst.ff_value(val));
        }
        return;
    }
    std::vector<std::pair<Poly, Poly>> vimg;
    for (auto& e : var_images_) vimg.push_back(dst.expand(e));
    for (int j = 0; j < src.generator_count(); ++j) {
        auto [n, d] = compose_fraction(src.generator_poly(j), vimg);
        auto img = dst.normalize(n, d);
        if (!img || img->is_zero())
            throw error("not a homomorphism: generator " + src.generator_name(j) +
                        " has no unit image");
        gen_images_.push_back(*img);
    }
}

PfElement PfHom::apply(const PfElement& a) const {
    if (a.pf != src_) throw error("element not from the source field");
    if (a.is_zero()) return dst_->zero();
    PfElement r = dst_->one();
    // torsion part
    if (src_->has_i()) {
        PfElement iimg = dst_->one();
        iimg.unit = 1;  // dst has i as well, checked at construction
        r = dst_->mul(r, dst_->pow(iimg, a.unit));
    } else if (a.unit & 1) {
        r = dst_->neg(r);
    }
    for (size_t j = 0; j < a.exps.size(); ++j)
        if (a.exps[j]) r = dst_->mul(r, dst_->pow(gen_images_[j], a.exps[j]));
    return r;
}

bool pf_roundtrip_check(const PfHom& hf, const PfHom& hb) {
    if (&hf.dst() != &hb.src() || &hf.src() != &hb.dst()) return false;
    const PartialField& A = hf.src();
    const PartialField& B = hf.dst();
    for (size_t v = 0; v < A.variables().size(); ++v) {
        PfElement x = A.parse(A.variables()[v]);
        if (hb.apply(hf.apply(x)) != x) return false;
    }
    for (size_t v = 0; v < B.variables().size(); ++v) {
        PfElement x = B.parse(B.variables()[v]);
        if (hf.apply(hb.apply(x)) != x) return false;
    }
    return true;
}

}  // namespace pfm
