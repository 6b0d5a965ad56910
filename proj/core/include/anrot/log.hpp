#pragma once

#include <string>

namespace anrot {

// Warnings flag measure-zero tie-breaks and near-degenerate inputs.
// The default handler writes one line to stderr.
using WarnHandler = void (*)(const std::string&);

void set_warn_handler(WarnHandler handler);
void warn(const std::string& message);

}  // namespace anrot
