#include "boolcsp/classify.hpp"

#include "boolcsp/errors.hpp"

namespace boolcsp {

RelationClass classify_relation(const Relation& r, int k, const std::string& name) {
    RelationClass out;
    out.is_affine = is_affine(r);
    if (out.is_affine) out.affine = affine_system(r);
    if (is_orconj(r)) out.orconj = normalize_orconj(r);
    if (is_nandconj(r)) out.nandconj = normalize_nandconj(r);
    if (is_imconj(r)) out.imconj = normalize_imconj(r);

    if (const auto& f = out.orconj ? out.orconj : out.nandconj) {
        out.width = f->width();
        out.repetition = f->repetition();
    } else {
        out.equality_witness = relation_equality_witness(NamedRelation{name, r}, k);
        if (out.equality_witness->instance.variable_count() <= brute_force_budget()) {
            out.witness_report = verify_gadget(*out.equality_witness);
            if (!out.witness_report->passed) throw Error("equality witness for '" + name + "' failed verification");
        }
    }
    return out;
}

} // namespace boolcsp
