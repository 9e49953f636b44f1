// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#pragma once

namespace ccopt {

// Entry point behind the ccopt binary; separated so tests can drive the
// command surface in-process. Exit codes: 0 success / pass verdicts,
// 1 fail verdicts, 2 usage or input errors.
int cli_run(int argc, const char* const* argv);

}  // namespace ccopt
