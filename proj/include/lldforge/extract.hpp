#ifndef LLDFORGE_EXTRACT_HPP
#define LLDFORGE_EXTRACT_HPP

#include "lldforge/twisted.hpp"

namespace lldforge {

// One verified step of the recovery pipeline.
struct ClaimRecord {
    std::string stage;
    bool pass = false;
    std::string detail;
};

// Invertible maps carrying the recovered twisted space onto the input:
// S = { g_map o Gamma(e_j) o f_map } as a span, coordinates in the input bases.
struct EquivalenceCertificate {
    Mat f_map;  // source space U  ->  A'^2
    Mat g_map;  // A'^2            ->  target space V
};

struct ExtractionResult {
    LdbAlgebra algebra;
    EquivalenceCertificate certificate;
    std::vector<ClaimRecord> transcript;
};

// Recover an LDB division algebra from a reduced LLD space S of dimension
// n+1 with a hyperplane H of minimal rank 2n-2, running the classification
// pipeline stage by stage. Throws PreconditionFailed naming the stage when a
// hypothesis fails; a transcript of every stage is produced either way.
ExtractionResult extract_ldb(const MatSpace& s, const std::vector<Mat>& h_basis);

// span equality of { g o Gamma(e_j) o f } with S, by exact rank computations
bool verify_equivalence_certificate(const MatSpace& s, const LdbAlgebra& algebra,
                                    const EquivalenceCertificate& cert);

enum class GalleryName { Alt4, Alt8, Quat4, Oct8 };

struct GalleryReport {
    MatSpace space;
    GenericMat generic;
    std::string headline;            // the verified identity, as printable text
    bool nonsingular_certified = false;
    std::string refusal;             // set over finite fields, naming the obstruction
    std::optional<Mat> singular_witness;  // a nonzero singular element when refused
};

// the explicit display gallery: the two alternating spaces and the two
// left-multiplication spaces, verified at construction
GalleryReport gallery(GalleryName name, const FieldPtr& field = field_Q());

GalleryName gallery_name_from_string(const std::string& s);

} // namespace lldforge

#endif
