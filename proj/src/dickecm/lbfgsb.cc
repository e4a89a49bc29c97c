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

#include "dickecm/lbfgsb.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "dickecm/errors.h"

namespace dickecm {

Box Box::uniform(size_t dim, double lo, double hi) {
    return Box{std::vector<double>(dim, lo), std::vector<double>(dim, hi)};
}

void Box::validate() const {
    if (lo.size() != hi.size() || lo.empty()) {
        throw DomainError("box bounds must be non-empty and of equal length");
    }
    for (size_t i = 0; i < lo.size(); i++) {
        if (!(lo[i] < hi[i])) {
            throw DomainError("box needs lo < hi in coordinate " + std::to_string(i));
        }
    }
}

bool Box::contains(std::span<const double> x) const {
    if (x.size() != lo.size()) {
        return false;
    }
    for (size_t i = 0; i < x.size(); i++) {
        if (!(x[i] >= lo[i] && x[i] <= hi[i])) {
            return false;
        }
    }
    return true;
}

void Box::project(std::span<double> x) const {
    for (size_t i = 0; i < x.size(); i++) {
        x[i] = std::clamp(x[i], lo[i], hi[i]);
    }
}

const char *termination_name(Termination t) {
    switch (t) {
        case Termination::MaxIterations:
            return "maxiter";
        case Termination::FunctionTolerance:
            return "ftol";
        case Termination::ProjectedGradient:
            return "pgtol";
        case Termination::LineSearchFailure:
            return "line_search";
    }
    return "?";
}

std::vector<double> finite_diff_gradient(const Objective &f, std::span<const double> x, double h, const Box *box) {
    std::vector<double> g(x.size());
    std::vector<double> probe(x.begin(), x.end());
    double f0 = std::numeric_limits<double>::quiet_NaN();
    for (size_t i = 0; i < x.size(); i++) {
        bool room_up = box == nullptr || x[i] + h <= box->hi[i];
        bool room_down = box == nullptr || x[i] - h >= box->lo[i];
        if (room_up && room_down) {
            probe[i] = x[i] + h;
            double up = f(probe);
            probe[i] = x[i] - h;
            double down = f(probe);
            g[i] = (up - down) / (2 * h);
        } else {
            if (std::isnan(f0)) {
                f0 = f(x);
            }
            if (room_up) {
                probe[i] = x[i] + h;
                g[i] = (f(probe) - f0) / h;
            } else if (room_down) {
                probe[i] = x[i] - h;
                g[i] = (f0 - f(probe)) / h;
            } else {
                g[i] = 0;
            }
        }
        probe[i] = x[i];
    }
    return g;
}

namespace {

double dot(const std::vector<double> &a, const std::vector<double> &b) {
    double s = 0;
    for (size_t i = 0; i < a.size(); i++) {
        s += a[i] * b[i];
    }
    return s;
}

struct Pair {
    std::vector<double> s;
    std::vector<double> y;
    double rho;
};

// Two-loop recursion restricted to the free coordinates.
std::vector<double> search_direction(
    const std::vector<double> &g, const std::deque<Pair> &history, const std::vector<bool> &free) {
    size_t n = g.size();
    std::vector<double> q(n);
    for (size_t i = 0; i < n; i++) {
        q[i] = free[i] ? g[i] : 0;
    }
    auto masked_dot = [&](const std::vector<double> &a, const std::vector<double> &b) {
        double s = 0;
        for (size_t i = 0; i < n; i++) {
            if (free[i]) {
                s += a[i] * b[i];
            }
        }
        return s;
    };
    std::vector<double> alpha(history.size());
    for (size_t k = history.size(); k-- > 0;) {
        const auto &p = history[k];
        alpha[k] = p.rho * masked_dot(p.s, q);
        for (size_t i = 0; i < n; i++) {
            if (free[i]) {
                q[i] -= alpha[k] * p.y[i];
            }
        }
    }
    if (!history.empty()) {
        const auto &last = history.back();
        double yy = masked_dot(last.y, last.y);
        double sy = masked_dot(last.s, last.y);
        if (yy > 0 && sy > 0) {
            for (auto &v : q) {
                v *= sy / yy;
            }
        }
    }
    for (size_t k = 0; k < history.size(); k++) {
        const auto &p = history[k];
        double beta = p.rho * masked_dot(p.y, q);
        for (size_t i = 0; i < n; i++) {
            if (free[i]) {
                q[i] += p.s[i] * (alpha[k] - beta);
            }
        }
    }
    for (auto &v : q) {
        v = -v;
    }
    return q;
}

// With an analytic gradient every trial point gets its gradient alongside the value; otherwise the
// gradient is requested separately, with an empty value span, once a step is accepted.
LbfgsbResult minimize(const ObjectiveWithGradient &fg, std::vector<double> x, const Box &box,
                      const LbfgsbOptions &opt, int evals_per_gradient) {
    bool analytic = evals_per_gradient == 0;
    box.validate();
    if (x.size() != box.dim()) {
        throw DomainError("start point dimension does not match box");
    }
    if (!box.contains(x)) {
        throw DomainError("start point lies outside the box");
    }
    size_t n = x.size();
    LbfgsbResult res;
    std::vector<double> g(n);
    double f = fg(x, g);
    if (!analytic) {
        f = fg(x, {});
    }
    res.evaluations += 1 + evals_per_gradient;
    if (!std::isfinite(f)) {
        throw NumericalError("objective is not finite at the start point");
    }
    res.x = x;
    res.f = f;
    std::deque<Pair> history;
    res.reason = Termination::MaxIterations;

    while (res.iterations < opt.maxiter) {
        double pg = 0;
        std::vector<bool> free(n);
        for (size_t i = 0; i < n; i++) {
            pg = std::max(pg, std::abs(x[i] - std::clamp(x[i] - g[i], box.lo[i], box.hi[i])));
            bool pinned_lo = x[i] <= box.lo[i] && g[i] > 0;
            bool pinned_hi = x[i] >= box.hi[i] && g[i] < 0;
            free[i] = !(pinned_lo || pinned_hi);
        }
        if (pg < opt.pgtol) {
            res.reason = Termination::ProjectedGradient;
            break;
        }

        auto d = search_direction(g, history, free);
        if (dot(g, d) >= 0) {
            history.clear();
            d = search_direction(g, history, free);
        }
        double t = 1;
        if (history.empty()) {
            double norm = std::sqrt(dot(d, d));
            t = norm > 0 ? std::min(1.0, 1.0 / norm) : 1.0;
        }

        std::vector<double> x_new(n);
        std::vector<double> g_new(n);
        double f_new = 0;
        bool accepted = false;
        for (int ls = 0; ls < opt.max_line_search; ls++) {
            for (size_t i = 0; i < n; i++) {
                x_new[i] = x[i] + t * d[i];
            }
            box.project(x_new);
            double decrease = 0;
            for (size_t i = 0; i < n; i++) {
                decrease += g[i] * (x_new[i] - x[i]);
            }
            f_new = analytic ? fg(x_new, g_new) : fg(x_new, {});
            res.evaluations++;
            if (std::isfinite(f_new) && f_new < res.f) {
                res.f = f_new;
                res.x = x_new;
            }
            if (std::isfinite(f_new) && f_new <= f + opt.armijo * decrease && decrease < 0) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        res.iterations++;
        if (!accepted) {
            res.reason = Termination::LineSearchFailure;
            break;
        }
        if ((f - f_new) / std::max({std::abs(f), std::abs(f_new), 1.0}) <= opt.ftol) {
            res.reason = Termination::FunctionTolerance;
            break;
        }
        if (!analytic) {
            fg(x_new, g_new);
            res.evaluations += evals_per_gradient;
        }

        Pair p{std::vector<double>(n), std::vector<double>(n), 0};
        for (size_t i = 0; i < n; i++) {
            p.s[i] = x_new[i] - x[i];
            p.y[i] = g_new[i] - g[i];
        }
        double sy = dot(p.s, p.y);
        if (sy > 1e-12 * std::sqrt(dot(p.y, p.y) * dot(p.s, p.s))) {
            p.rho = 1 / sy;
            history.push_back(std::move(p));
            if (static_cast<int>(history.size()) > opt.memory) {
                history.pop_front();
            }
        }
        x.swap(x_new);
        g.swap(g_new);
        f = f_new;
    }
    return res;
}

}  // namespace

LbfgsbResult lbfgsb_minimize(const Objective &f, std::vector<double> x0, const Box &box,
                             const LbfgsbOptions &options) {
    ObjectiveWithGradient fg = [&](std::span<const double> x, std::span<double> g) {
        if (g.empty()) {
            return f(x);
        }
        auto grad = finite_diff_gradient(f, x, options.fd_step, &box);
        std::copy(grad.begin(), grad.end(), g.begin());
        return 0.0;
    };
    return minimize(fg, std::move(x0), box, options, static_cast<int>(2 * box.dim()));
}

LbfgsbResult lbfgsb_minimize_with_gradient(const ObjectiveWithGradient &f, std::vector<double> x0, const Box &box,
                                           const LbfgsbOptions &options) {
    return minimize(f, std::move(x0), box, options, 0);
}

}  // namespace dickecm
