#ifndef CYCLEMLD_CLI_HPP
#define CYCLEMLD_CLI_HPP

namespace cyclemld {

/// Entry point behind main(). Exit codes: 0 all checks passed, 1 a
/// mathematical check failed, 2 usage or I/O error.
int run(int argc, char** argv);

} // namespace cyclemld

#endif
