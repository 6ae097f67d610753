// exercises the shared-library surface exactly as an external client would
#include <cassert>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include "gridtest.h"

static int failures = 0;

#define EXPECT(cond)                                                        \
    do {                                                                    \
        if (!(cond)) {                                                      \
            std::fprintf(stderr, "FAIL %s:%d: %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                     \
        }                                                                   \
    } while (0)

static void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

int main() {
    EXPECT(std::strlen(gt_version()) > 0);

    // loading a missing file reports EIO with a message
    gt_oracle* oracle = nullptr;
    EXPECT(gt_oracle_load("/nonexistent/table.txt", &oracle) == GT_EIO);
    EXPECT(std::strlen(gt_last_error()) > 0);

    // a small group table: the two-coordinate indicator over Z_3^4 -> Z_5
    std::string gpath = "capi_group_table.txt";
    {
        std::string table = "sizes: 3 3 3 3\ncodomain: Z5\n";
        int x[4];
        for (x[0] = 0; x[0] < 3; ++x[0])
            for (x[1] = 0; x[1] < 3; ++x[1])
                for (x[2] = 0; x[2] < 3; ++x[2])
                    for (x[3] = 0; x[3] < 3; ++x[3]) {
                        char line[64];
                        int v = (x[0] == 1 && x[1] == 1) ? 1 : 0;
                        std::snprintf(line, sizeof line, "%d %d %d %d | %d\n", x[0], x[1], x[2],
                                      x[3], v);
                        table += line;
                    }
        write_file(gpath, table);
    }
    EXPECT(gt_oracle_load(gpath.c_str(), &oracle) == GT_OK);
    int32_t n = 0, sizes[8] = {0};
    char codomain[16] = {0};
    EXPECT(gt_oracle_info(oracle, &n, sizes, 8, codomain, sizeof codomain) == GT_OK);
    EXPECT(n == 4);
    EXPECT(sizes[0] == 3 && sizes[3] == 3);
    EXPECT(std::strcmp(codomain, "Z5") == 0);

    // round trip through save
    EXPECT(gt_oracle_save(oracle, "capi_copy.txt") == GT_OK);
    gt_oracle* copy = nullptr;
    EXPECT(gt_oracle_load("capi_copy.txt", &copy) == GT_OK);
    gt_oracle_free(copy);

    // junta tester: the indicator has junta-degree 2, so d=2 always accepts
    gt_test_summary summary;
    EXPECT(gt_junta_test(oracle, 2, 4, GT_JUNTA_FORM_REPHRASED, 0, 1, 200, 42, 0, &summary) ==
           GT_OK);
    EXPECT(summary.rejections == 0);
    EXPECT(summary.trials == 200);
    // and d=1 rejects with positive rate
    EXPECT(gt_junta_test(oracle, 1, 4, GT_JUNTA_FORM_RECURSIVE, 0, 1, 200, 42, 0, &summary) ==
           GT_OK);
    EXPECT(summary.rejections > 0);
    EXPECT(summary.mean_queries <= 81.0);
    // field-only entry points refuse group tables
    EXPECT(gt_weak_deg_test(oracle, 1, 0, 0, 10, 1, 0, &summary) == GT_EINVAL);

    // junta distance of the indicator: nonzero
    uint64_t num = 0, den = 1;
    EXPECT(gt_exact_distance(oracle, GT_FAMILY_JUNTA, 1, &num, &den, "capi_witness.txt") == GT_OK);
    EXPECT(num > 0);
    gt_oracle* witness = nullptr;
    EXPECT(gt_oracle_load("capi_witness.txt", &witness) == GT_OK);
    gt_oracle_free(witness);
    gt_oracle_free(oracle);

    // a field table over {0,1,2}^5 in F_7: x1(x1-1)
    std::string fpath = "capi_field_table.txt";
    {
        std::string table = "sizes: 3 3 3 3 3\ncodomain: F7\n";
        int x[5];
        for (x[0] = 0; x[0] < 3; ++x[0])
            for (x[1] = 0; x[1] < 3; ++x[1])
                for (x[2] = 0; x[2] < 3; ++x[2])
                    for (x[3] = 0; x[3] < 3; ++x[3])
                        for (x[4] = 0; x[4] < 3; ++x[4]) {
                            char line[64];
                            int v = (x[0] * (x[0] - 1)) % 7;
                            std::snprintf(line, sizeof line, "%d %d %d %d %d | %d\n", x[0], x[1],
                                          x[2], x[3], x[4], v);
                            table += line;
                        }
        write_file(fpath, table);
    }
    gt_oracle* field = nullptr;
    EXPECT(gt_oracle_load(fpath.c_str(), &field) == GT_OK);
    EXPECT(gt_weak_deg_test(field, 1, 6, 0, 50, 7, 0, &summary) == GT_OK);
    EXPECT(summary.rejections > 0); // junta-degree-1 but not degree-1
    EXPECT(gt_deg_test(field, 2, 4, 6, 0, 1, 50, 7, 0, &summary) == GT_OK);
    EXPECT(summary.rejections == 0); // it is degree-2
    EXPECT(gt_exact_distance(field, GT_FAMILY_DEGREE, 1, &num, &den, nullptr) == GT_OK);
    EXPECT(num * 3 == den); // exactly 1/3
    gt_oracle_free(field);

    // sse sweep writes a CSV and reports no violations
    double nus[2] = {0.5, 1.0};
    int32_t violations = -1;
    EXPECT(gt_sse_sweep(4, 3, nus, 2, 5, 0.05, 0.4, 11, 0, "capi_sse.csv", &violations) == GT_OK);
    EXPECT(violations == 0);

    gt_impossibility_summary imp;
    EXPECT(gt_impossibility(27, 2, 20, 13, 0, nullptr, &imp) == GT_OK);
    EXPECT(imp.matrices == 20);
    EXPECT(imp.bound_violations == 0);
    EXPECT(imp.certificates_ok == imp.collisions);

    // experiment runner via config file
    write_file("capi_config.json",
               R"({"version":1,"kind":"sigma-goodness","seed":3,
                   "params":{"r":32,"k":4,"samples":5000}})");
    int32_t pass = 0;
    EXPECT(gt_experiment_run("capi_config.json", 0, &pass) == GT_OK);
    EXPECT(pass == 1);

    if (failures == 0) std::printf("capi: all checks passed\n");
    return failures == 0 ? 0 : 1;
}
