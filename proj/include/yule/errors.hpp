/*
   Copyright 2026 The yule Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace yule {

// Domain violations (n < 2, s < 0, invalid mgf point, ...) are reported with
// std::domain_error. The classes below cover numerical failures.

/// A computation produced a non-finite or otherwise unusable number.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, int n = 0);
    int n() const noexcept { return n_; }

private:
    int n_;
};

/// Adaptive quadrature ran out of budget before meeting its tolerance.
/// The best available estimate is carried along.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double value, double abs_error,
                     long cells);
    double value() const noexcept { return value_; }
    double abs_error() const noexcept { return abs_error_; }
    long cells() const noexcept { return cells_; }

private:
    double value_;
    double abs_error_;
    long cells_;
};

/// An improper integral does not converge (its tail is not shrinking).
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace yule
