#pragma once

#include <string>
#include <vector>

namespace newsaudit::llmgen {

// Strips machine-output artifacts: leading "Title:" / "Headline:" / "Body:"
// labels, markdown header marks, symmetric surrounding quotes, and lines
// matching the bundled disclaimer pattern list. Runs to a fixpoint, so
// sanitize(sanitize(s)) == sanitize(s). An output that sanitizes to the
// empty string is a rejection signal (see sanitize_rejects).
std::string sanitize(const std::string& raw);

// True when nothing survives sanitization.
bool sanitize_rejects(const std::string& raw);

// The bundled disclaimer patterns (case-insensitive ECMAScript regexes),
// one per line of the embedded pattern file, comments removed.
const std::vector<std::string>& disclaimer_patterns();

}  // namespace newsaudit::llmgen
