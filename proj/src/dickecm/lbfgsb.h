// Copyright 2026 The dickecm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DICKECM_LBFGSB_H
#define DICKECM_LBFGSB_H

#include <functional>
#include <span>
#include <vector>

namespace dickecm {

struct Box {
    std::vector<double> lo;
    std::vector<double> hi;

    static Box uniform(size_t dim, double lo, double hi);

    size_t dim() const {
        return lo.size();
    }
    /// Throws DomainError unless lo < hi in every coordinate.
    void validate() const;
    bool contains(std::span<const double> x) const;
    void project(std::span<double> x) const;
};

struct LbfgsbOptions {
    int maxiter = 100;
    /// Stop when the relative decrease of an accepted step falls to this value.
    double ftol = 1e-6;
    double pgtol = 1e-10;
    double fd_step = 1e-4;
    int memory = 10;
    int max_line_search = 20;
    double armijo = 1e-4;
};

enum class Termination {
    MaxIterations,
    FunctionTolerance,
    ProjectedGradient,
    LineSearchFailure,
};

const char *termination_name(Termination t);

struct LbfgsbResult {
    std::vector<double> x;
    double f = 0;
    int iterations = 0;
    int evaluations = 0;
    Termination reason = Termination::MaxIterations;
};

using Objective = std::function<double(std::span<const double>)>;
/// Returns f(x) and writes the gradient into the second argument.
using ObjectiveWithGradient = std::function<double(std::span<const double>, std::span<double>)>;

/// Central differences, switching to one-sided differences within h of a box face.
std::vector<double> finite_diff_gradient(
    const Objective &f, std::span<const double> x, double h, const Box *box = nullptr);

LbfgsbResult lbfgsb_minimize(
    const Objective &f, std::vector<double> x0, const Box &box, const LbfgsbOptions &options = {});

LbfgsbResult lbfgsb_minimize_with_gradient(
    const ObjectiveWithGradient &f, std::vector<double> x0, const Box &box, const LbfgsbOptions &options = {});

}  // namespace dickecm

#endif
