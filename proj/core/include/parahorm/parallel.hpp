// This file is part of parahorm.
// Licensed under the Apache License, Version 2.0. See the LICENSE file.

#ifndef PARAHORM_PARALLEL_HPP
#define PARAHORM_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace parahorm {

/// Worker count used by parallel maps. Reads PARAHORM_WORKERS once; falls
/// back to the hardware concurrency. Always at least 1.
int worker_count();

/// Plain parallel index map: calls fn(i) for i in [0, n). Each index is
/// visited exactly once; fn must only write to slots owned by its index, so
/// results do not depend on the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace parahorm

#endif  // PARAHORM_PARALLEL_HPP
