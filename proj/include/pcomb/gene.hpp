#pragma once

// Gene-level association example: per-SNP Fisher exact tests on rare-variant
// counts in 1000 cases and 1000 controls, combined within each gene.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pcomb/combine.hpp"

namespace pcomb {

struct SnpCounts {
    int snp;                 // 1-based SNP label
    std::int64_t carriers;   // mutations in cases and controls together
    std::int64_t cases;      // mutations among cases
};

struct GeneData {
    std::string name;
    std::vector<SnpCounts> snps;
};

struct GeneStudy {
    std::int64_t cases;
    std::int64_t controls;
    std::vector<GeneData> genes;
};

/// The embedded 15-SNP, two-gene dataset.
const GeneStudy& embedded_gene_study();

struct GeneResult {
    std::string gene;
    Side side;
    CombinedResult result;
};

/// Every gene x side (two, right, left) x method, with each SNP's count of
/// case mutations modelled as hypergeometric given its total.
std::vector<GeneResult> gene_example(const GeneStudy& study = embedded_gene_study());

}  // namespace pcomb
