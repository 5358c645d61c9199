#!/usr/bin/env python3
import os
import shutil
from setuptools import setup, Command
import versioneer

REQUIRED = [
    'PyYAML>=4.2b1',
    'colored>=1.4.0',
    'numpy>=1.17',
    'scipy>=1.3',
    'setuptools>=41.2.0',
]

HOME = os.path.expanduser("~")
HERE = os.path.abspath(os.path.dirname(__file__))

RC_KEYS = ['color', 'out', 'seed', 'theme_map', 'threads', 'verbosity']

def rcfile_check():
    rc_location = os.path.join(HOME, ".lingrowrc")
    example_location = os.path.join(HERE, 'example_lingrowrc')
    if os.path.exists(rc_location):
        if os.path.isdir(rc_location):
            print("WARN: default rc file location is a directory")
        else:
            print(".lingrowrc already defined, skipping")
            return
    else:
        print("Copying example rc file to %s" % rc_location)
        shutil.copyfile(example_location, rc_location)

class RCFile(Command):
    """Re/Create RCFile"""
    description = 'Create a lingrow rc file'
    user_options = []

    def initialize_options(self):
        pass

    def finalize_options(self):
        pass

    def user_input(self, prompt, default):
        u_input = input(prompt).strip()
        return u_input if u_input else default

    def run(self):
        out = self.user_input("Directory for result files (defaults to ~/lingrow-out): ",
                              os.path.join(HOME, "lingrow-out"))
        threads = self.user_input("Worker threads for scans and experiments (defaults to 1): ", "1")
        seed = self.user_input("Seed for random test sets and scans (defaults to 0): ", "0")
        color = self.user_input("Colored output, true or false (defaults to true): ", "true")
        rc_location = os.path.join(HOME, ".lingrowrc")
        with open(rc_location, 'w') as rcfile:
            rcfile.write("out: %s\n" % os.path.expanduser(out))
            rcfile.write("threads: %s\n" % threads)
            rcfile.write("seed: %s\n" % seed)
            rcfile.write("color: %s\n" % color)
        print("Wrote %s" % rc_location)

class Verify(Command):
    """Verify RCFile"""
    description = 'Verify a lingrow rc file'
    user_options = [
        ('rcfile=', 'r', 'rcfile to verify, defaults to ~/.lingrowrc'),
    ]

    def initialize_options(self):
        self.rcfile = os.path.join(HOME, '.lingrowrc')

    def finalize_options(self):
        pass

    def check_integers(self, args_dict, valid):
        for arg in ['seed', 'threads', 'verbosity']:
            if arg in args_dict and not isinstance(args_dict[arg], int):
                valid = False
                print("'%s' found in config, but it is not an integer" % arg)
        if isinstance(args_dict.get('threads'), int) and args_dict['threads'] < 1:
            valid = False
            print("'threads' found in config, it must be at least 1")
        return valid

    def run(self):
        import yaml
        valid = True
        args_dict = {}
        if self.rcfile:
            with open(os.path.expanduser(self.rcfile), 'r') as rcyaml:
                try:
                    args_dict = yaml.safe_load(rcyaml) or {}
                except yaml.YAMLError as err:
                    valid = False
                    print(err)
        for arg in args_dict.keys():
            if arg not in RC_KEYS:
                valid = False
                print("'%s' found in rc file, does not appear to be valid argument" % arg)

        valid = self.check_integers(args_dict, valid)
        if valid:
            print("Config Valid")

CMDCLASS = versioneer.get_cmdclass()
CMDCLASS['rcfile'] = RCFile
CMDCLASS['verify'] = Verify
setup(
    version=versioneer.get_version(),
    install_requires=REQUIRED,
    extras_require={
        'testing': ["mock", "tox"]
    },
    cmdclass=CMDCLASS,
    )

try:
    rcfile_check()
except FileNotFoundError as err:
    print("WARN: could not copy example rc file")
