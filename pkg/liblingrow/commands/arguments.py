"""This Module defines the arguments that argparse will accept from the CLI"""

ARGUMENTS = {
    ############################################################################
    # Data structure containing all arguments a user could pass into lingrow
    # This keeps flags consistent between subcommands.  We use this with
    # *args and **kwargs constructs
    ############################################################################
    'color': {
        'args': ['--color'],
        'kwargs': {
            'type': str,
            'help': "Disable color or not, accepts true/false"
        }
    },

    'experiment': {
        'args': ['experiment'],
        'kwargs': {
            'type': str,
            'help': "Name of the experiment: borderline-area, remark-h4 or vectorial"
        }
    },

    'out': {
        'args': ['-o', '--out'],
        'kwargs': {
            'type': str,
            'help': "Directory receiving the result files"
        }
    },

    'params': {
        'args': ['-p', '--params'],
        'kwargs': {
            'type': str,
            'help': "Experiment parameters as a JSON object"
        }
    },

    'quiet': {
        'args': ['-q', '--quiet'],
        'kwargs': {
            'action': 'store_const',
            'const': -1,
            'dest': 'verbosity',
            'help': 'quiet output (show errors only)'
        }
    },

    'run_config': {
        'args': ['run_config'],
        'kwargs': {
            'type': str,
            'help': "Path to the JSON run configuration"
        }
    },

    'seed': {
        'args': ['--seed'],
        'kwargs': {
            'type': int,
            'help': "Seed for every random sample drawn by the run"
        }
    },

    'theme_map': {
        'args': ['--theme-map'],
        'kwargs': {
            'type': str,
            'dest': 'theme_map',
            'help': "Override color defaults, a JSON object of role to color name"
        }
    },

    'threads': {
        'args': ['-t', '--threads'],
        'kwargs': {
            'type': int,
            'help': "Worker threads for test set scans and experiment rows"
        }
    },

    'verbosity': {
        'args': ['-v', '--verbose'],
        'kwargs': {
            'action': 'count',
            'dest': 'verbosity',
            'help': 'verbose output (repeat for increased verbosity)'
        }
    }
}
