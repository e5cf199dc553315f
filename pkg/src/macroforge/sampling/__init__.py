from .sampler import DynamicWeightedSampler, sampler_new
from .streams import run_stream, sector_stream, BufferedUniforms
