#pragma once

#include <cstddef>
#include <functional>

namespace entclt {

// Run fn(i) for i in [0, count) on up to jobs threads. Work items are
// claimed from an atomic counter; callers must write results into
// index-addressed slots so the output is identical for any jobs value.
// Exceptions are captured and the first one (by index) is rethrown.
void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& fn);

}  // namespace entclt
