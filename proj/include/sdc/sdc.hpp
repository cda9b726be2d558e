#pragma once

#include "sdc/dataset.hpp"
#include "sdc/divisive_cut.hpp"
#include "sdc/intree.hpp"
#include "sdc/io.hpp"
#include "sdc/mst.hpp"
#include "sdc/oracle.hpp"
#include "sdc/pipeline.hpp"
#include "sdc/rng.hpp"
