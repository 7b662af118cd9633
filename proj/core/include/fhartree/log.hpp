#pragma once

#include <functional>
#include <string>

namespace fhartree {

using WarningSink = std::function<void(const std::string&)>;

// Non-fatal diagnostics (tail warnings, support warnings) go through one sink.
// The default sink prints to stderr. Returns the previous sink.
WarningSink set_warning_sink(WarningSink sink);
void warn(const std::string& message);

}  // namespace fhartree
