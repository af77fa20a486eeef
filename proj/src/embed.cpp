#include <map>
#include <mutex>
#include <stdexcept>

#include "prym/ff.hpp"
#include "prym/poly.hpp"

namespace prym {

// Embeddings are canonical (smallest root of the source modulus in the target)
// and cached per (src, dst) presentation pair.
const Embedding& get_embedding(const FieldCtx& src, const FieldCtx& dst) {
    if (src->p != dst->p)
        throw std::invalid_argument("embedding across different characteristics");
    if (dst->k % src->k != 0)
        throw std::invalid_argument("incompatible extensions: source degree does not divide");
    static std::map<std::string, std::unique_ptr<Embedding>> cache;
    static std::mutex mu;
    const std::string key = src->str() + "->" + dst->str();
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;

    auto e = std::make_unique<Embedding>();
    e->src = src;
    e->dst = dst;
    if (src->k == 1) {
        e->gen_image = FieldElement::zero(dst); // constants only; Horner seed
    } else if (src->same(*dst)) {
        e->gen_image = FieldElement::from_coeffs(dst, {0, 1}); // identity map
    } else {
        FieldCtx primec = FieldContext::prime_field(src->p);
        Poly mod = Poly::from_ints(primec, src->modulus);
        auto roots = realize_roots(mod, dst, 0x90017ULL);
        e->gen_image = roots.front(); // realize_roots sorts canonically
    }
    const Embedding& ref = *e;
    cache.emplace(key, std::move(e));
    return ref;
}

} // namespace prym
