#pragma once

#include "sraembed/assouad.hpp"
#include "sraembed/audit.hpp"
#include "sraembed/errors.hpp"
#include "sraembed/generators.hpp"
#include "sraembed/io.hpp"
#include "sraembed/lipschitz.hpp"
#include "sraembed/metric_space.hpp"
#include "sraembed/pipeline.hpp"
#include "sraembed/point_map.hpp"
#include "sraembed/sra.hpp"
