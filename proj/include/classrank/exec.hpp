#ifndef CLASSRANK_EXEC_HPP
#define CLASSRANK_EXEC_HPP

namespace classrank {

// Execution policy for the data-parallel kernels. Serial runs are the
// reference implementations the tests compare against; parallel runs use
// OpenMP worker teams and must produce identical output.
enum class Exec { serial, parallel };

} // namespace classrank

#endif
