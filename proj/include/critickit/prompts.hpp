// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <string_view>

namespace critickit {

// Versioned prompt templates compiled in from templates/*.txt.
std::string_view critic_prompt_template() noexcept;
std::string_view verify_answer_template() noexcept;
std::string_view thinking_prompt_template() noexcept;

/// Replaces every `{name}` whose name is a key of @p values in one left-to-right pass.
/// Substituted text is never rescanned, and unknown brace groups such as `\boxed{}` are copied as-is.
std::string render_template(std::string_view tmpl, const std::map<std::string, std::string, std::less<>>& values);

} // namespace critickit
