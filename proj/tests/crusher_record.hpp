// A fully populated record from an AMD offload run, shared by the golden tests.
#pragma once

#include "test_support.hpp"

namespace ompconf::test {

inline ResultRecord crusher_record() {
    ResultRecord r;
    r.binary_path = "bin/alpaka_complex_template.cpp";
    r.compiler_command =
        "amdclang++ -I./ompvv -std=c++11 -lm -O3 -fopenmp -fopenmp -fopenmp-targets=amdgcn-amd-amdhsa "
        "-Xopenmp-target=amdgcn-amd-amdhsa -march=gfx90a  -D__NO_MATH_INLINES -U__SSE2_MATH__ -U__SSE_MATH__";
    r.compiler_start = at(2022, 7, 14, 16, 30, 3, "EDT");
    r.compiler_end = at(2022, 7, 14, 16, 30, 15, "EDT");
    r.compiler_name =
        "amdclang++ AMD clang version 13.0.0 (https://github.com/RadeonOpenCompute/llvm-project roc-4.5.0 21422 "
        "e2489b0d7ede612d6586c61728db321047833ed8)";
    r.compiler_output = "";
    r.compiler_result = Status::PASS;
    r.omp_version = OmpVersion::V4_5;
    r.runtime_start = at(2022, 7, 14, 16, 30, 14, "EDT");
    r.runtime_end = at(2022, 7, 14, 16, 30, 15, "EDT");
    r.runtime_only = false;
    r.runtime_output =
        "\x1b[0;32m \n\n running: bin/alpaka_complex_template.cpp.run \x1b[0m\n"
        "alpaka_complex_template.cpp.o: PASS. exit code: 0\n"
        "\x1b[0;31malpaka_complex_template.cpp.o:\n"
        "[OMPVV_INFO: alpaka_complex_template.cpp:40] Test is running on device.\n"
        "[OMPVV_INFO: alpaka_complex_template.cpp:58] The value of errors is 0.\n"
        "[OMPVV_RESULT: alpaka_complex_template.cpp] Test passed on the device.\x1b[0m\n";
    r.runtime_result = Status::PASS;
    r.test_comments = "none";
    r.git_commit = "98cae2b";
    r.test_name = "alpaka_complex_template.cpp";
    r.test_path = "tests/4.5/application_kernels/alpaka_complex_template.cpp";
    r.test_system = "crusher";
    return r;
}

}  // namespace ompconf::test
