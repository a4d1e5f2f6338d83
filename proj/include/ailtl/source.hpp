/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/
#ifndef AILTL_SOURCE_HPP
#define AILTL_SOURCE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ailtl {

/// Location of a construct in its source text. Lines and columns are
/// 1-based; a zero line marks a synthesized node. Spans never take part in
/// structural equality.
struct SourceSpan {
    std::uint32_t line = 0;
    std::uint32_t column = 0;
    std::uint32_t length = 0;
};

/// Parse or validation failure, carrying the offending location.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, SourceSpan span)
        : std::runtime_error(span.line > 0 ? "line " + std::to_string(span.line) + ", column " +
                                                 std::to_string(span.column) + ": " + message
                                           : message),
          span_(span)
    {
    }

    SourceSpan span() const { return span_; }

private:
    SourceSpan span_;
};

} // namespace ailtl

#endif
