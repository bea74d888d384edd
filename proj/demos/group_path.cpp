// Copyright 2026 The fliess-kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// A path in the output-feedback group driven by a time-varying curve, and
// the exact one-parameter property of constant curves.

#include <cmath>
#include <cstdio>

#include "fliess/fliess.hpp"

using namespace fliess;

int main() {
    const int L = 3;
    LieAlgebraCurve curve{[](double t) {
                              Series<double> c(1, 1, L);
                              c.set(Word{1}, std::cos(3 * t));
                              c.set(Word{1, 1}, t);
                              return c;
                          },
                          1, L, "smooth"};
    GroupPath path = evolve(curve, L, 128);
    std::printf("gamma(1) for c(t) = cos(3t) x1 + t x1x1:\n%s", serialize_series(path.at(1.0).body()).c_str());

    Series<double> c(1, 1, L);
    c.set(Word{}, 0.5);
    c.set(Word{1}, 1.0);
    c.set(Word{0, 1}, -0.25);
    for (int steps : {4, 16, 64})
        std::printf("constant c, %3d steps: |gamma(1/2)^2 - gamma(1)| = %.3g\n", steps, one_parameter_check(c, L, steps));
    return 0;
}
