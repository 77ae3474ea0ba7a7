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

#include "yule/errors.hpp"

namespace yule {

NumericError::NumericError(const std::string& what, int n)
    : std::runtime_error(what + (n > 0 ? " (n=" + std::to_string(n) + ")" : std::string())),
      n_(n) {}

ConvergenceError::ConvergenceError(const std::string& what, double value,
                                   double abs_error, long cells)
    : std::runtime_error(what), value_(value), abs_error_(abs_error), cells_(cells) {}

}  // namespace yule
