#include "pcomb/gene.hpp"

#include "pcomb/distributions.hpp"

namespace pcomb {

const GeneStudy& embedded_gene_study() {
    static const GeneStudy study{
        1000,
        1000,
        {
            {"Gene 1", {{1, 19, 13}, {2, 16, 11}, {3, 16, 11}, {4, 10, 7}, {5, 13, 9}}},
            {"Gene 2",
             {{6, 12, 8},
              {7, 10, 7},
              {8, 12, 8},
              {9, 11, 8},
              {10, 16, 11},
              {11, 19, 10},
              {12, 9, 3},
              {13, 14, 6},
              {14, 8, 5},
              {15, 7, 4}}},
        },
    };
    return study;
}

std::vector<GeneResult> gene_example(const GeneStudy& study) {
    const double population = static_cast<double>(study.cases + study.controls);
    std::vector<GeneResult> out;
    for (const GeneData& gene : study.genes) {
        for (Side side : {Side::two, Side::right, Side::left}) {
            std::vector<std::size_t> atoms;
            std::vector<DiscretePValueDist> dists;
            for (const SnpCounts& snp : gene.snps) {
                const StatisticModel model = make_statistic_model(
                    Family::hypergeometric, {{"population", population},
                                             {"successes", static_cast<double>(study.cases)},
                                             {"draws", static_cast<double>(snp.carriers)}});
                atoms.push_back(observed_pvalue(model, side, snp.cases).index);
                dists.push_back(pvalue_distribution(model, side));
            }
            for (Method method : kMethods) {
                std::vector<AdjustedStatistic> adjusted;
                for (const auto& d : dists) adjusted.push_back(adjust(method, d));
                out.push_back({gene.name, side, combine_adjusted(atoms, adjusted)});
            }
        }
    }
    return out;
}

}  // namespace pcomb
