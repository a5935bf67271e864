# -*- coding: utf-8 -*-
from configobj import ConfigObj, ParseError, flatten_errors
from validate import Validator
from logging import getLogger
log = getLogger("config_utils")

class ConfigLoadError(Exception): pass

def load_config(config_path, configspec_path=None, copy=True, *args, **kwargs):
 spec = ConfigObj(configspec_path, encoding='UTF8', list_values=False, _inspec=True)
 try:
  config = ConfigObj(infile=config_path, configspec=spec, create_empty=True, encoding='UTF8', *args, **kwargs)
 except ParseError:
  raise ConfigLoadError("Unable to load %r" % config_path)
 validator = Validator()
 validated = config.validate(validator, preserve_errors=True, copy=copy)
 if validated == True:
  config.write()
 else:
  for problem in describe_errors(config, validated):
   log.error("error in config file: {0}".format(problem,))
  # drop the bad values so validation fills in the configspec defaults
  for sections, key, error in flatten_errors(config, validated):
   if key is None:
    continue
   section = config
   for name in sections:
    section = section[name]
   if key in section:
    del section[key]
  config.validate(validator, copy=copy)
 return config

def describe_errors(config, validated):
 "Turns a configobj validation result into readable 'section.key: reason' strings."
 res = []
 for sections, key, error in flatten_errors(config, validated):
  where = ".".join(list(sections) + [key if key is not None else "<section>"])
  reason = str(error) if error else "missing"
  res.append("%s: %s" % (where, reason))
 return res
