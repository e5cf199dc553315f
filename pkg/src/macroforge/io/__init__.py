from .config import load_config, load_config_document, serialize_config, save_config, bundled_configs, bundled_golden
from .export import export_data, load_data, to_table, to_structured
from .plot import plot_data, plot_data_vector
