/**
 * Copyright 2026 The earate Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef EARATE_VERIFY_HPP
#define EARATE_VERIFY_HPP

// Oracle-equivalence and invariant suites behind the verify subcommand.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "earate/channel.hpp"

namespace earate {

enum class CheckStatus { pass, warn, fail };

std::string_view check_status_name(CheckStatus s) noexcept;

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    double residual = 0.0;   ///< worst observed deviation
    double tolerance = 0.0;
    std::string detail;
};

enum class VerifyLevel { quick, full };

/// Analytic matrix element under test; defaults to lambda_element.
using ElementFn = std::function<double(const ChannelParams&, std::uint32_t, std::uint32_t,
                                       std::uint32_t, std::uint32_t)>;

struct VerifyOptions {
    VerifyLevel level = VerifyLevel::quick;
    ElementFn element;  ///< empty = lambda_element
    unsigned workers = 0;
};

std::vector<CheckResult> run_verify(const VerifyOptions& opt);

/// "STATUS  name  residual=... tol=...  detail"
std::string format_check(const CheckResult& c);

}  // namespace earate

#endif
